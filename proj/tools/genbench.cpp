// Emits the desk-scale arithmetic benchmark suite as AIGER files.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "aigopt/aiger_io.hpp"
#include "aigopt/bench_gen.hpp"

int main( int argc, char** argv )
{
  CLI::App app{ "generate the benchmark suite" };
  std::string output = "benchmarks";
  bool ascii = false;
  app.add_option( "--output", output, "target directory" );
  app.add_flag( "--ascii", ascii, "also write aag variants" );
  CLI11_PARSE( app, argc, argv );

  try
  {
    std::filesystem::create_directories( output );
    for ( const auto& bench : aigopt::desk_benchmarks() )
    {
      const auto base = std::filesystem::path( output ) / bench.name;
      aigopt::write_aiger_file( bench.design, base.string() + ".aig", false );
      if ( ascii )
      {
        aigopt::write_aiger_file( bench.design, base.string() + ".aag", true );
      }
      const auto stats = aigopt::extract_stats( bench.design );
      std::cout << bench.name << ": " << stats.num_pi << " inputs, " << stats.num_nodes
                << " nodes, " << stats.num_levels << " levels\n";
    }
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
