#include "aigopt/cli.hpp"

int main( int argc, char** argv )
{
  return aigopt::cli::main_entry( argc, argv );
}
