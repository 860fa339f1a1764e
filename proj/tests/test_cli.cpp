#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "aigopt/aiger_io.hpp"
#include "aigopt/bench_gen.hpp"
#include "aigopt/cli.hpp"

using namespace aigopt;
namespace fs = std::filesystem;

namespace {

struct temp_tree {
  fs::path root;
  explicit temp_tree( const std::string& name ) : root( fs::path( "cli_test_tmp" ) / name )
  {
    fs::remove_all( root );
    fs::create_directories( root );
  }
  ~temp_tree() { fs::remove_all( "cli_test_tmp" ); }
  std::string path( const std::string& leaf ) const { return ( root / leaf ).string(); }
};

std::string write_benchmark( const temp_tree& tree )
{
  const auto path = tree.path( "adder4.aig" );
  write_aiger_file( make_adder( 4 ), path, false );
  return path;
}

} // namespace

TEST_CASE( "stats command prints node and level counts" )
{
  temp_tree tree( "stats" );
  const auto bench = write_benchmark( tree );
  CHECK( cli::run_command( { "stats", "--benchmark", bench } ) == cli::exit_ok );
  CHECK( cli::run_command( { "stats", "--benchmark", tree.path( "missing.aig" ) } ) ==
         cli::exit_input );
}

TEST_CASE( "train writes the full artifact set" )
{
  temp_tree tree( "train" );
  const auto bench = write_benchmark( tree );
  const auto out = tree.path( "run" );
  const int rc = cli::run_command( { "train", "--benchmark", bench, "--seed", "3", "--episodes",
                                     "2", "--iterations", "3", "--output", out } );
  CHECK( rc == cli::exit_ok );
  for ( const char* artifact : { "episodes.csv", "steps.csv", "best.flow", "best.aig",
                                 "actor.ckpt", "critic.ckpt", "summary.json", "run_config.json" } )
  {
    CHECK_MESSAGE( fs::exists( fs::path( out ) / artifact ), artifact );
  }
  // the optimized design still parses
  const aig best = read_aiger_file( ( fs::path( out ) / "best.aig" ).string() );
  CHECK( best.num_inputs() == 8 );
}

TEST_CASE( "train demands a seed" )
{
  temp_tree tree( "noseed" );
  const auto bench = write_benchmark( tree );
  CHECK( cli::run_command( { "train", "--benchmark", bench } ) == cli::exit_usage );
}

TEST_CASE( "missing benchmark file exits with an input error" )
{
  temp_tree tree( "missing" );
  CHECK( cli::run_command( { "train", "--benchmark", tree.path( "nope.aig" ), "--seed", "1",
                             "--output", tree.path( "o" ) } ) == cli::exit_input );
}

TEST_CASE( "script command runs flow files" )
{
  temp_tree tree( "script" );
  const auto bench = write_benchmark( tree );
  const auto flow = tree.path( "flow.txt" );
  {
    std::ofstream out( flow );
    out << "balance\nrewrite\n";
  }
  CHECK( cli::run_command( { "script", "--benchmark", bench, "--script", flow, "--output",
                             tree.path( "srun" ) } ) == cli::exit_ok );

  const auto bad = tree.path( "bad.txt" );
  {
    std::ofstream out( bad );
    out << "explode\n";
  }
  CHECK( cli::run_command( { "script", "--benchmark", bench, "--script", bad, "--output",
                             tree.path( "srun2" ) } ) == cli::exit_input );
}

TEST_CASE( "config file values are overridden by flags" )
{
  temp_tree tree( "config" );
  const auto bench = write_benchmark( tree );
  const auto cfg = tree.path( "config.json" );
  {
    std::ofstream out( cfg );
    out << "{\"episodes\": 1, \"iterations\": 2, \"seed\": 9, \"constraint_levels\": 50}\n";
  }
  const auto out_dir = tree.path( "crun" );
  CHECK( cli::run_command( { "random", "--benchmark", bench, "--config", cfg, "--iterations", "1",
                             "--output", out_dir } ) == cli::exit_ok );
  std::ifstream summary( fs::path( out_dir ) / "run_config.json" );
  std::string text( ( std::istreambuf_iterator<char>( summary ) ),
                    std::istreambuf_iterator<char>() );
  CHECK( text.find( "\"iterations\": 1" ) != std::string::npos ); // flag wins
  CHECK( text.find( "\"episodes\": 1" ) != std::string::npos );   // config wins
  CHECK( text.find( "\"seed\": 9" ) != std::string::npos );
}

TEST_CASE( "greedy, random and compare work together" )
{
  temp_tree tree( "compare" );
  const auto bench = write_benchmark( tree );
  const auto gdir = tree.path( "g" );
  const auto rdir = tree.path( "r" );
  REQUIRE( cli::run_command( { "greedy", "--benchmark", bench, "--output", gdir } ) ==
           cli::exit_ok );
  REQUIRE( cli::run_command( { "random", "--benchmark", bench, "--seed", "2", "--episodes", "2",
                               "--iterations", "4", "--output", rdir } ) == cli::exit_ok );
  const auto cdir = tree.path( "cmp" );
  CHECK( cli::run_command( { "compare", gdir, rdir, "--output", cdir } ) == cli::exit_ok );
  CHECK( fs::exists( fs::path( cdir ) / "compare.csv" ) );
  CHECK( fs::exists( fs::path( cdir ) / "traces.csv" ) );

  std::ifstream table( fs::path( cdir ) / "compare.csv" );
  std::string text( ( std::istreambuf_iterator<char>( table ) ), std::istreambuf_iterator<char>() );
  CHECK( text.find( "adder4,greedy" ) != std::string::npos );
  CHECK( text.find( "adder4,random" ) != std::string::npos );
  CHECK( text.find( "adder4,initial" ) != std::string::npos );
  CHECK( text.find( "average," ) != std::string::npos );

  CHECK( cli::run_command( { "compare", tree.path( "absent" ) } ) == cli::exit_input );
}

TEST_CASE( "usage errors exit with code one" )
{
  CHECK( cli::run_command( { "no-such-command" } ) == cli::exit_usage );
  CHECK( cli::run_command( {} ) == cli::exit_usage );
}
