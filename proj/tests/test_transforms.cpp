#include <doctest.h>

#include "aigopt/transforms.hpp"
#include "test_util.hpp"

using namespace aigopt;

namespace {

aig chain_of_four()
{
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const literal d = b.add_ci();
  const literal e = b.add_ci();
  return b.build( { b.add_and( b.add_and( b.add_and( a, c ), d ), e ) } );
}

void check_interface_preserved( const aig& before, const aig& after )
{
  CHECK( after.num_inputs() == before.num_inputs() );
  CHECK( after.num_latches() == before.num_latches() );
  CHECK( after.num_outputs() == before.num_outputs() );
}

} // namespace

TEST_CASE( "balance flattens a linear chain" )
{
  const aig g = chain_of_four();
  CHECK( levels( g ).max_level == 3 );
  const aig b = balance( g );
  CHECK( levels( b ).max_level == 2 );
  CHECK( equivalent( g, b ).proven() );
}

TEST_CASE( "balance keeps an already balanced tree" )
{
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const literal d = b.add_ci();
  const literal e = b.add_ci();
  const aig g = b.build( { b.add_and( b.add_and( a, c ), b.add_and( d, e ) ) } );
  const aig result = balance( g );
  CHECK( levels( result ).max_level == levels( g ).max_level );
  CHECK( result.num_ands() == g.num_ands() );
  CHECK( equivalent( g, result ).proven() );
}

TEST_CASE( "balance never raises depth on random graphs" )
{
  rng64 rng( 53 );
  for ( int k = 0; k < 200; ++k )
  {
    const aig g = strash( testing::random_raw_aig( rng ) );
    const aig result = balance( g );
    CHECK( levels( result ).max_level <= levels( g ).max_level );
    CHECK( equivalent( g, result ).proven() );
    check_interface_preserved( g, result );
  }
}

TEST_CASE( "rewrite shares duplicated logic inside a cut" )
{
  // two structurally different forms of the same cut function
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const literal d = b.add_ci();
  const literal left = b.add_and( b.add_and( a, c ), d );
  const literal right = b.add_and( a, b.add_and( c, d ) );
  const aig g = b.build( { b.add_and( left, right ) } ); // equals a & c & d
  const aig result = rewrite( g, false );
  CHECK( equivalent( g, result ).proven() );
  CHECK( result.num_ands() < g.num_ands() );
  CHECK( result.num_ands() == 2 );
}

TEST_CASE( "rewrite leaves a minimal structure alone" )
{
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const aig g = b.build( { b.add_xor( a, c ) } );
  const aig result = rewrite( g, false );
  CHECK( result.num_ands() == g.num_ands() );
  CHECK( equivalent( g, result ).proven() );
}

TEST_CASE( "refactor collapses redundant cone logic" )
{
  // (a | b) & (a | c) resynthesizes to a | (b & c)
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const literal d = b.add_ci();
  const aig g = b.build( { b.add_and( b.add_or( a, c ), b.add_or( a, d ) ) } );
  CHECK( g.num_ands() == 3 );
  const aig result = refactor( g, false );
  CHECK( equivalent( g, result ).proven() );
  CHECK( result.num_ands() == 2 );
}

TEST_CASE( "refactor leaves parity cones alone" )
{
  // the sum-of-products of parity is much larger than the xor chain
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const literal d = b.add_ci();
  const aig g = b.build( { b.add_xor( b.add_xor( a, c ), d ) } );
  const aig result = refactor( g, false );
  CHECK( result.num_ands() == g.num_ands() );
  CHECK( equivalent( g, result ).proven() );
}

TEST_CASE( "resub merges functionally equivalent nodes" )
{
  // (a & b) & c and a & (b & c) are the same function, different structure
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const literal d = b.add_ci();
  const literal f1 = b.add_and( b.add_and( a, c ), d );
  const literal f2 = b.add_and( a, b.add_and( c, d ) );
  const aig g = b.build( { f1, f2 } );
  CHECK( g.num_ands() == 4 );
  const aig result = resub( g, false );
  CHECK( equivalent( g, result ).proven() );
  CHECK( result.num_ands() == 2 );
  CHECK( result.outputs()[0] == result.outputs()[1] );
}

TEST_CASE( "resub rewires a node onto side divisors" )
{
  // n = (a&c)&(b&d) equals d1 & d2 with d1 = a&b, d2 = c&d kept alive
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const literal d = b.add_ci();
  const literal e = b.add_ci();
  const literal d1 = b.add_and( a, c );
  const literal d2 = b.add_and( d, e );
  const literal n = b.add_and( b.add_and( a, d ), b.add_and( c, e ) );
  const aig g = b.build( { d1, d2, n } );
  CHECK( g.num_ands() == 5 );
  const aig result = resub( g, false );
  CHECK( equivalent( g, result ).proven() );
  CHECK( result.num_ands() == 3 );
}

TEST_CASE( "transforms preserve function and never add nodes" )
{
  const auto& lib = npn_library::instance();
  rng64 rng( 59 );
  for ( int k = 0; k < 200; ++k )
  {
    const aig g = strash( testing::random_raw_aig( rng ) );
    for ( const bool zero_cost : { false, true } )
    {
      for ( const aig result : { rewrite( g, zero_cost, lib ), refactor( g, zero_cost ),
                                 resub( g, zero_cost ) } )
      {
        CHECK( equivalent( g, result ).proven() );
        CHECK( result.num_ands() <= g.num_ands() );
        check_interface_preserved( g, result );
      }
    }
  }
}

TEST_CASE( "apply dispatches and re-strashes" )
{
  const aig g = chain_of_four();
  const aig balanced = apply_transform( g, transform_id::balance );
  CHECK( levels( balanced ).max_level == 2 );

  rng64 rng( 61 );
  for ( int k = 0; k < 30; ++k )
  {
    const aig r = strash( testing::random_raw_aig( rng ) );
    for ( const auto t : all_transforms )
    {
      const aig result = apply_transform( r, t );
      CHECK( equivalent( r, result ).proven() );
      check_interface_preserved( r, result );
    }
  }
}

TEST_CASE( "apply on the empty graph is a fixpoint" )
{
  const aig g = aig::from_parts( 0, 0, {}, {}, { lit_false } );
  for ( const auto t : all_transforms )
  {
    const aig result = apply_transform( g, t );
    CHECK( result.num_ands() == 0 );
    CHECK( result.outputs()[0] == lit_false );
  }
}

TEST_CASE( "transform names round trip" )
{
  for ( const auto t : all_transforms )
  {
    const auto back = transform_from_name( transform_name( t ) );
    REQUIRE( back.has_value() );
    CHECK( *back == t );
  }
  CHECK( !transform_from_name( "mystery" ).has_value() );
  CHECK( transform_from_name( "resub -z" ).has_value() );
}
