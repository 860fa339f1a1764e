#include <doctest.h>

#include "aigopt/aiger_io.hpp"
#include "test_util.hpp"

using namespace aigopt;

TEST_CASE( "parse the single-AND ascii example" )
{
  const aig g = parse_aiger( "aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n" );
  CHECK( g.num_inputs() == 2 );
  CHECK( g.num_outputs() == 1 );
  CHECK( g.num_ands() == 1 );
  CHECK( g.node( 3 ).fanin0 == literal( 1, false ) );
  CHECK( g.node( 3 ).fanin1 == literal( 2, false ) );
  CHECK( g.outputs()[0] == literal( 3, false ) );
}

TEST_CASE( "constant-output file" )
{
  const aig g = parse_aiger( "aag 0 0 0 1 0\n0\n" );
  CHECK( g.num_inputs() == 0 );
  CHECK( g.num_ands() == 0 );
  CHECK( g.outputs()[0] == lit_false );
  CHECK( write_aiger( g, true ) == "aag 0 0 0 1 0\n0\n" );
}

TEST_CASE( "write produces the expected ascii header" )
{
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const aig g = b.build( { b.add_and( a, c ) } );
  const auto text = write_aiger( g, true );
  CHECK( text.rfind( "aag 3 2 0 1 1", 0 ) == 0 );
}

TEST_CASE( "binary and ascii encodings parse to the same structure" )
{
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const aig g = b.build( { b.add_and( a, c ) } );
  const aig from_ascii = parse_aiger( write_aiger( g, true ) );
  const aig from_binary = parse_aiger( write_aiger( g, false ) );
  CHECK( structurally_equal( from_ascii, from_binary ) );
  CHECK( structurally_equal( from_ascii, g ) );
}

TEST_CASE( "round trip over random graphs" )
{
  rng64 rng( 37 );
  for ( int k = 0; k < 200; ++k )
  {
    const aig g = testing::random_raw_aig( rng );
    CHECK( structurally_equal( parse_aiger( write_aiger( g, true ) ), g ) );
    CHECK( structurally_equal( parse_aiger( write_aiger( g, false ) ), g ) );
  }
}

TEST_CASE( "latches round trip and can be rejected" )
{
  const std::string text = "aag 2 1 1 1 0\n2\n4 2\n4\n";
  const aig g = parse_aiger( text );
  CHECK( g.num_latches() == 1 );
  CHECK( g.latch_next()[0] == literal( 1, false ) );
  CHECK( structurally_equal( parse_aiger( write_aiger( g, true ) ), g ) );
  CHECK( structurally_equal( parse_aiger( write_aiger( g, false ) ), g ) );
  CHECK_THROWS_AS( parse_aiger( text, true ), aig_error );
}

TEST_CASE( "symbol table and comments are tolerated" )
{
  const aig g = parse_aiger( "aag 3 2 0 1 1\n2\n4\n6\n6 2 4\ni0 foo\ni1 bar\no0 baz\nc\nnote\n" );
  CHECK( g.num_ands() == 1 );
}

TEST_CASE( "malformed inputs raise parse errors with offsets" )
{
  CHECK_THROWS_AS( parse_aiger( "axx 1 0 0 0 0\n" ), aiger_parse_error );
  CHECK_THROWS_AS( parse_aiger( "aag 1 1\n" ), aiger_parse_error );
  CHECK_THROWS_AS( parse_aiger( "aag 0 0 0 1 1\n0\n" ), aiger_parse_error ); // M < I+L+A
  try
  {
    parse_aiger( "aag 1 1 0 1 0\n2\n9\n" ); // output references var 4
    CHECK( false );
  }
  catch ( const aiger_parse_error& e )
  {
    CHECK( e.offset > 0 );
    CHECK( std::string( e.what() ).find( "byte" ) != std::string::npos );
  }
}

TEST_CASE( "ascii AND referencing an undefined variable fails" )
{
  CHECK_THROWS_AS( parse_aiger( "aag 3 1 0 1 1\n2\n6\n6 2 8\n" ), aiger_parse_error );
}

TEST_CASE( "non-canonical ascii variable numbering is accepted" )
{
  // input is variable 3 (literal 6), AND is variable 1 (literal 2)
  const aig g = parse_aiger( "aag 3 1 0 1 1\n6\n2\n2 6 6\n" );
  CHECK( g.num_inputs() == 1 );
  CHECK( g.num_ands() == 1 );
  CHECK( g.node( 2 ).fanin0 == literal( 1, false ) );
}
