#include <doctest.h>

#include "aigopt/work_aig.hpp"
#include "test_util.hpp"

using namespace aigopt;

namespace {

aig two_cone_graph( literal& out_x, literal& out_y )
{
  // x = a & b, y = x & c
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const literal d = b.add_ci();
  out_x = b.add_and( a, c );
  out_y = b.add_and( out_x, d );
  return b.build( { out_y } );
}

} // namespace

TEST_CASE( "import requires a strashed graph" )
{
  const literal in1( 1, false );
  const literal in2( 2, false );
  auto dup = aig::from_parts( 2, 0, { { in1, in2 }, { in1, in2 } }, {}, { literal( 4, false ) } );
  CHECK_THROWS_AS( work_aig{ dup }, aig_error );
}

TEST_CASE( "import and export preserve the function" )
{
  rng64 rng( 43 );
  for ( int k = 0; k < 100; ++k )
  {
    const aig g = testing::random_aig( rng );
    work_aig w( g );
    w.check_consistency();
    CHECK( w.num_live_ands() == g.num_ands() );
    const aig back = w.to_aig();
    CHECK( equivalent( g, back ).proven() );
    CHECK( back.num_ands() == g.num_ands() );
  }
}

TEST_CASE( "make_and folds and hashes" )
{
  literal x, y;
  const aig g = two_cone_graph( x, y );
  work_aig w( g );
  const literal a( 1, false );
  const literal c( 2, false );
  CHECK( w.make_and( a, lit_false ) == lit_false );
  CHECK( w.make_and( a, lit_true ) == a );
  CHECK( w.make_and( a, !a ) == lit_false );
  CHECK( w.make_and( a, a ) == a );
  // the pair (a, c) already exists as node x
  CHECK( w.make_and( a, c ).index() == x.index() );
  CHECK( w.make_and( c, a ).index() == x.index() );
  w.check_consistency();
}

TEST_CASE( "replace redirects fanouts and frees the cone" )
{
  literal x, y;
  const aig g = two_cone_graph( x, y );
  work_aig w( g );
  const literal a( 1, false );
  w.replace( x.index(), a );
  w.check_consistency();
  CHECK( w.num_live_ands() == 1 );
  const aig back = w.to_aig();
  // y collapsed to a & c(third input)
  CHECK( back.num_ands() == 1 );
  CHECK( simulate( back, { true, false, true } )[0] == true );
  CHECK( simulate( back, { false, true, true } )[0] == false );
}

TEST_CASE( "replace merges colliding nodes downstream" )
{
  // n1 = a & b, n2 = a & c, n3 = n1 & c; replacing n1 by a makes n3
  // collide with n2
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const literal d = b.add_ci();
  const literal n1 = b.add_and( a, c );
  const literal n2 = b.add_and( a, d );
  const literal n3 = b.add_and( n1, d );
  const aig g = b.build( { n2, n3 } );
  work_aig w( g );
  w.replace( n1.index(), a );
  w.check_consistency();
  CHECK( w.num_live_ands() == 1 );
  CHECK( w.outputs()[0] == w.outputs()[1] );
}

TEST_CASE( "replace by constant folds through" )
{
  literal x, y;
  const aig g = two_cone_graph( x, y );
  work_aig w( g );
  w.replace( x.index(), lit_false );
  w.check_consistency();
  CHECK( w.num_live_ands() == 0 );
  CHECK( w.outputs()[0] == lit_false );
}

TEST_CASE( "rollback removes candidate nodes exactly" )
{
  literal x, y;
  const aig g = two_cone_graph( x, y );
  work_aig w( g );
  const uint32_t wm = w.watermark();
  const literal d( 3, false );
  const literal t1 = w.make_and( literal( 1, false ), !d );
  const literal t2 = w.make_and( t1, literal( 2, false ) );
  CHECK( w.nodes_added( wm ) == 2 );
  (void)t2;
  w.rollback_to( wm );
  CHECK( w.size() == wm );
  w.check_consistency();
  CHECK( w.num_live_ands() == g.num_ands() );
}

TEST_CASE( "freed_if_replaced counts the exclusive cone" )
{
  literal x, y;
  const aig g = two_cone_graph( x, y );
  work_aig w( g );
  // y's cone contains x exclusively: both die
  CHECK( w.mffc_size( y.index() ) == 2 );
  // x is y's fanin only; replacing x frees just x
  CHECK( w.freed_if_replaced( x.index(), UINT32_MAX ) == 1 );
  // protecting x's index from the count
  CHECK( w.freed_if_replaced( y.index(), x.index() ) == 1 );
}

TEST_CASE( "random replaces keep the graph consistent" )
{
  rng64 rng( 47 );
  for ( int round = 0; round < 60; ++round )
  {
    const aig g = testing::random_aig( rng, 8, 40 );
    work_aig w( g );
    for ( int step = 0; step < 6; ++step )
    {
      // pick a live AND node and a replacement literal not in its own
      // fanout cone (avoids creating cycles)
      std::vector<uint32_t> live;
      for ( uint32_t n = w.first_and(); n < w.size(); ++n )
      {
        if ( w.is_alive( n ) )
        {
          live.push_back( n );
        }
      }
      if ( live.empty() )
      {
        break;
      }
      const uint32_t target = live[rng.below( live.size() )];
      // collect the transitive fanin cone of a candidate replacement and
      // reject it when it contains the target
      std::vector<uint32_t> candidates;
      for ( uint32_t n = 1; n < w.size(); ++n )
      {
        if ( n != target && ( w.is_ci( n ) || w.is_alive( n ) ) )
        {
          candidates.push_back( n );
        }
      }
      const uint32_t pick = candidates[rng.below( candidates.size() )];
      bool reaches_target = false;
      std::vector<uint32_t> stack{ pick };
      std::vector<uint32_t> seen;
      while ( !stack.empty() )
      {
        const uint32_t v = stack.back();
        stack.pop_back();
        if ( v == target )
        {
          reaches_target = true;
          break;
        }
        if ( !w.is_and_index( v ) ||
             std::find( seen.begin(), seen.end(), v ) != seen.end() )
        {
          continue;
        }
        seen.push_back( v );
        stack.push_back( w.fanin0( v ).index() );
        stack.push_back( w.fanin1( v ).index() );
      }
      if ( reaches_target )
      {
        continue;
      }
      w.replace( target, literal( pick, rng.below( 2 ) == 1 ) );
      w.check_consistency();
    }
  }
}
