#include <doctest.h>

#include "aigopt/baselines.hpp"
#include "aigopt/bench_gen.hpp"
#include "test_util.hpp"

using namespace aigopt;

TEST_CASE( "greedy adopts non-increasing areas and terminates" )
{
  rng64 rng( 179 );
  for ( int k = 0; k < 20; ++k )
  {
    const aig g = strash( testing::random_raw_aig( rng, 8, 50 ) );
    const auto result = greedy( g, levels( g ).max_level );
    REQUIRE( result.history.size() >= 2 );
    for ( size_t i = 1; i < result.history.size(); ++i )
    {
      CHECK( result.history[i].m.area_proxy <= result.history[i - 1].m.area_proxy );
    }
    CHECK( result.history.back().m.area_proxy ==
           result.history[result.history.size() - 2].m.area_proxy );
    CHECK( equivalent( g, result.final_design ).proven() );
    CHECK( !result.stop_reason.empty() );
  }
}

TEST_CASE( "greedy stops after two equal iterations on a fixpoint" )
{
  // a lone AND gate cannot be improved by any transform
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const aig g = b.build( { b.add_and( a, c ) } );
  const auto result = greedy( g, 1 );
  CHECK( result.history.size() == 2 );
  CHECK( result.history[0].m.area_proxy == 1 );
  CHECK( result.history[1].m.area_proxy == 1 );
}

TEST_CASE( "greedy is deterministic" )
{
  const aig g = make_multiplier( 4 );
  const auto first = greedy( g, levels( g ).max_level );
  for ( int repeat = 0; repeat < 2; ++repeat )
  {
    const auto again = greedy( g, levels( g ).max_level );
    REQUIRE( again.history.size() == first.history.size() );
    for ( size_t i = 0; i < first.history.size(); ++i )
    {
      CHECK( again.history[i].chosen == first.history[i].chosen );
      CHECK( again.history[i].m.area_proxy == first.history[i].m.area_proxy );
    }
    CHECK( structurally_equal( again.final_design, first.final_design ) );
  }
}

TEST_CASE( "greedy parallel and sequential evaluation agree" )
{
  const aig g = make_divider( 4 );
  const auto par = greedy( g, levels( g ).max_level, npn_library::instance(), true );
  const auto seq = greedy( g, levels( g ).max_level, npn_library::instance(), false );
  REQUIRE( par.history.size() == seq.history.size() );
  for ( size_t i = 0; i < par.history.size(); ++i )
  {
    CHECK( par.history[i].chosen == seq.history[i].chosen );
  }
}

TEST_CASE( "run_script applies flows in order" )
{
  aig_builder b;
  const literal a = b.add_ci();
  const literal c = b.add_ci();
  const literal d = b.add_ci();
  const literal e = b.add_ci();
  const aig chain = b.build( { b.add_and( b.add_and( b.add_and( a, c ), d ), e ) } );

  SUBCASE( "empty flow keeps the metrics" )
  {
    const auto r = run_script( chain, {}, 3 );
    CHECK( r.m.area_proxy == chain.num_ands() );
    CHECK( r.m.delay_proxy == levels( chain ).max_level );
  }
  SUBCASE( "balance reduces the chain depth" )
  {
    const auto r = run_script( chain, { transform_id::balance }, 3 );
    CHECK( r.m.delay_proxy == 2 );
  }
  SUBCASE( "every flow preserves the function" )
  {
    rng64 rng( 181 );
    for ( int k = 0; k < 10; ++k )
    {
      const aig g = strash( testing::random_raw_aig( rng ) );
      std::vector<transform_id> flow;
      for ( int t = 0; t < 5; ++t )
      {
        flow.push_back( all_transforms[rng.below( num_transforms )] );
      }
      const auto r = run_script( g, flow, 10 );
      CHECK( equivalent( g, r.design ).proven() );
    }
  }
}

TEST_CASE( "parse_script names and errors" )
{
  const auto flow = parse_script( "balance\nrewrite -z\n\n# comment\nresub\n" );
  REQUIRE( flow.size() == 3 );
  CHECK( flow[0] == transform_id::balance );
  CHECK( flow[1] == transform_id::rewrite_z );
  CHECK( flow[2] == transform_id::resub );

  CHECK_THROWS_WITH_AS( parse_script( "balance\nfrobnicate\n" ),
                        "unknown transform 'frobnicate' on line 2", script_error );
}

TEST_CASE( "random_search respects budget and seeds" )
{
  const aig g = make_adder( 4 );
  const uint32_t constraint = levels( g ).max_level;

  SUBCASE( "budget one applies a single transform" )
  {
    const auto r = random_search( g, constraint, 1, 1, 7 );
    CHECK( r.best_flow.size() == 1 );
  }
  SUBCASE( "fixed seeds reproduce the flow" )
  {
    const auto r1 = random_search( g, constraint, 3, 4, 11 );
    const auto r2 = random_search( g, constraint, 3, 4, 11 );
    CHECK( r1.best_flow == r2.best_flow );
    CHECK( r1.best_metrics.area_proxy == r2.best_metrics.area_proxy );
    const auto r3 = random_search( g, constraint, 3, 4, 12 );
    CHECK( equivalent( g, r3.best_design ).proven() );
  }
  SUBCASE( "the best never exceeds the initial area" )
  {
    const auto r = random_search( g, constraint, 5, 10, 13 );
    CHECK( r.best_metrics.area_proxy <= g.num_ands() );
    CHECK( equivalent( g, r.best_design ).proven() );
  }
  SUBCASE( "zero budget is rejected" )
  {
    CHECK_THROWS_AS( random_search( g, constraint, 0, 5, 1 ), std::invalid_argument );
  }
}
