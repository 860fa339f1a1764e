#include <doctest.h>

#include <cmath>
#include <sstream>

#include "aigopt/agent.hpp"
#include "aigopt/bench_gen.hpp"

using namespace aigopt;

namespace {

state_vector dummy_state( double fill )
{
  state_vector s;
  s.features.fill( fill );
  return s;
}

} // namespace

TEST_CASE( "discount_rewards matches the direct recurrence" )
{
  const auto r = discount_rewards( { 1.0, 0.0, 1.0 }, 0.5 );
  REQUIRE( r.size() == 3 );
  CHECK( r[0] == doctest::Approx( 1.25 ) );
  CHECK( r[1] == doctest::Approx( 0.5 ) );
  CHECK( r[2] == doctest::Approx( 1.0 ) );

  const auto zero_gamma = discount_rewards( { 3.0, -2.0, 5.0 }, 0.0 );
  CHECK( zero_gamma == std::vector<double>{ 3.0, -2.0, 5.0 } );

  CHECK( discount_rewards( { 4.0 }, 0.9 ) == std::vector<double>{ 4.0 } );
  CHECK_THROWS_AS( discount_rewards( {}, 0.9 ), std::invalid_argument );
}

TEST_CASE( "discount_rewards equals the quadratic summation oracle" )
{
  rng64 rng( 137 );
  for ( int trial = 0; trial < 100; ++trial )
  {
    const size_t n = 1 + rng.below( 60 );
    const double gamma = rng.uniform();
    std::vector<double> rewards( n );
    for ( auto& v : rewards )
    {
      v = rng.uniform( -3, 3 );
    }
    const auto fast = discount_rewards( rewards, gamma );
    for ( size_t t = 0; t < n; ++t )
    {
      double brute = 0.0;
      for ( size_t j = t; j < n; ++j )
      {
        brute += std::pow( gamma, static_cast<double>( j - t ) ) * rewards[j];
      }
      CHECK( std::abs( fast[t] - brute ) <= 1e-12 * std::max( 1.0, std::abs( brute ) ) );
    }
  }
}

TEST_CASE( "advantage and td_error share the formula" )
{
  CHECK( advantage( 1.0, 2.0, 1.0, 0.99 ) == doctest::Approx( 1.98 ) );
  CHECK( advantage( 0.0, 5.0, 5.0, 1.0 ) == doctest::Approx( 0.0 ) );
  CHECK( advantage( 2.0, 0.0, 0.5, 0.99 ) == doctest::Approx( 1.5 ) );
  CHECK( td_error( 1.0, 2.0, 1.0, 0.99 ) == advantage( 1.0, 2.0, 1.0, 0.99 ) );
  CHECK( td_error( 0.0, 5.0, 5.0, 1.0 ) == advantage( 0.0, 5.0, 5.0, 1.0 ) );
  CHECK( td_error( 2.0, 0.0, 0.5, 0.99 ) == advantage( 2.0, 0.0, 0.5, 0.99 ) );
}

TEST_CASE( "sample_action contract" )
{
  rng64 rng( 139 );
  SUBCASE( "one-hot always picks that action" )
  {
    std::vector<double> probs( 7, 0.0 );
    probs[6] = 1.0; // balance
    for ( int k = 0; k < 50; ++k )
    {
      CHECK( sample_action( probs, rng ) == transform_id::balance );
    }
  }
  SUBCASE( "uniform frequencies converge" )
  {
    const std::vector<double> probs( 7, 1.0 / 7 );
    std::array<uint32_t, 7> counts{};
    const int draws = 70000;
    for ( int k = 0; k < draws; ++k )
    {
      ++counts[static_cast<size_t>( sample_action( probs, rng ) )];
    }
    for ( const auto c : counts )
    {
      CHECK( std::abs( c / static_cast<double>( draws ) - 1.0 / 7 ) < 0.01 );
    }
  }
  SUBCASE( "degenerate inputs are rejected" )
  {
    CHECK_THROWS_AS( sample_action( std::vector<double>( 7, 1.0 / 14 ), rng ),
                     std::invalid_argument );
    std::vector<double> negative( 7, 2.0 / 7 );
    negative[0] = -5.0 / 7;
    CHECK_THROWS_AS( sample_action( negative, rng ), std::invalid_argument );
    std::vector<double> nan_probs( 7, 1.0 / 7 );
    nan_probs[2] = std::nan( "" );
    CHECK_THROWS_AS( sample_action( nan_probs, rng ), std::invalid_argument );
    CHECK_THROWS_AS( sample_action( std::vector<double>( 3, 1.0 / 3 ), rng ),
                     std::invalid_argument );
  }
}

TEST_CASE( "policy gradient moves the sampled action's probability" )
{
  rng64 rng( 149 );
  hyperparams hp;
  for ( int trial = 0; trial < 100; ++trial )
  {
    rng64 init( 1000 + trial );
    a2c_agent agent( hp, init );
    const auto s = dummy_state( rng.uniform( 0.2, 1.5 ) );
    const auto action = all_transforms[rng.below( num_transforms )];
    const double before = agent.policy( s )[static_cast<size_t>( action )];

    // synthesize a single-sample episode with a controlled advantage sign:
    // reward r makes the return r, and a fresh critic evaluates near zero,
    // so the sign of r drives the sign of the advantage
    const bool positive = trial % 2 == 0;
    const double v = agent.value( s );
    const double r = positive ? v + 2.0 : v - 2.0;
    trajectory traj;
    traj.states.push_back( s );
    traj.actions.push_back( action );
    traj.rewards.push_back( r );
    agent.train_episode( traj );

    const double after = agent.policy( s )[static_cast<size_t>( action )];
    if ( positive )
    {
      CHECK( after > before );
    }
    else
    {
      CHECK( after < before );
    }
  }
}

TEST_CASE( "zero advantage leaves the actor unchanged" )
{
  hyperparams hp;
  rng64 init( 151 );
  a2c_agent agent( hp, init );
  const auto s = dummy_state( 1.0 );
  trajectory traj;
  traj.states.push_back( s );
  traj.actions.push_back( transform_id::rewrite );
  traj.rewards.push_back( agent.value( s ) ); // return equals the value estimate
  const auto before = agent.actor().layers[0].weights;
  agent.train_episode( traj );
  CHECK( agent.actor().layers[0].weights == before );
}

TEST_CASE( "critic regression drives the squared error down" )
{
  hyperparams hp;
  rng64 init( 157 );
  a2c_agent agent( hp, init );
  const auto s = dummy_state( 0.7 );
  const double target = 4.0;
  const double initial = std::abs( agent.value( s ) - target );
  // squared error per 25-step window; window minima must not increase
  double previous_window = initial * initial;
  double final_error = initial;
  for ( int window = 0; window < 8; ++window )
  {
    double window_min = previous_window;
    for ( int step = 0; step < 25; ++step )
    {
      trajectory traj;
      traj.states.push_back( s );
      traj.actions.push_back( transform_id::resub );
      traj.rewards.push_back( target );
      agent.train_episode( traj );
      final_error = std::abs( agent.value( s ) - target );
      window_min = std::min( window_min, final_error * final_error );
    }
    CHECK( window_min <= previous_window + 1e-12 );
    previous_window = window_min;
  }
  CHECK( final_error < 0.5 );
  CHECK( final_error < initial );
}

TEST_CASE( "repeated training on a fixed trajectory favors the rewarded action" )
{
  hyperparams hp;
  rng64 init( 163 );
  a2c_agent agent( hp, init );
  const auto s = dummy_state( 1.0 );
  const auto rewarded = transform_id::refactor;
  // one synthetic episode: the rewarded action first, every other action after
  trajectory traj;
  traj.states.push_back( s );
  traj.actions.push_back( rewarded );
  traj.rewards.push_back( 3.0 );
  for ( const auto t : all_transforms )
  {
    if ( t == rewarded )
    {
      continue;
    }
    traj.states.push_back( s );
    traj.actions.push_back( t );
    traj.rewards.push_back( 0.0 );
  }

  double previous = agent.policy( s )[static_cast<size_t>( rewarded )];
  const double first = previous;
  for ( int update = 0; update < 100; ++update )
  {
    agent.train_episode( traj );
    const double now = agent.policy( s )[static_cast<size_t>( rewarded )];
    CHECK( now >= previous - 1e-9 );
    previous = now;
  }
  CHECK( previous > first );
  CHECK( previous > 0.5 );
}

TEST_CASE( "single-step gradient matches finite differences through the loss" )
{
  hyperparams hp;
  hp.actor_hidden = { 1 };
  hp.critic_hidden = { 1 };
  rng64 init( 167 );
  a2c_agent agent( hp, init );
  const auto s = dummy_state( 0.5 );
  const std::vector<double> input( s.features.begin(), s.features.end() );

  // actor loss for a fixed advantage: -log pi(a) * adv
  const size_t a = 2;
  const double adv = 1.7;
  auto loss_of = [&]( const mlp& net ) {
    return -std::log( softmax( forward( net, input ) )[a] ) * adv;
  };
  forward_cache cache;
  const auto logits = forward( agent.actor(), input, &cache );
  const auto probs = softmax( logits );
  std::vector<double> dlogits( probs.size() );
  for ( size_t j = 0; j < probs.size(); ++j )
  {
    dlogits[j] = ( probs[j] - ( j == a ? 1.0 : 0.0 ) ) * adv;
  }
  const auto analytic = backward( agent.actor(), cache, dlogits );

  mlp probe = agent.actor();
  const double h = 1e-5;
  double worst = 0.0;
  for ( size_t l = 0; l < probe.layers.size(); ++l )
  {
    for ( size_t k = 0; k < probe.layers[l].weights.size(); ++k )
    {
      const double keep = probe.layers[l].weights[k];
      probe.layers[l].weights[k] = keep + h;
      const double up = loss_of( probe );
      probe.layers[l].weights[k] = keep - h;
      const double down = loss_of( probe );
      probe.layers[l].weights[k] = keep;
      const double numeric = ( up - down ) / ( 2 * h );
      const double denom = std::max( { std::abs( numeric ), std::abs( analytic.weights[l][k] ), 1e-6 } );
      worst = std::max( worst, std::abs( numeric - analytic.weights[l][k] ) / denom );
    }
  }
  CHECK( worst < 1e-4 );
}

TEST_CASE( "run executes the minimal loop" )
{
  const aig design = make_adder( 4 );
  synthesis_env env( design, levels( design ).max_level, 1 );
  hyperparams hp;
  hp.episodes = 1;
  hp.iterations = 1;
  hp.seed = 5;
  std::ostringstream steps, episodes;
  run_hooks hooks;
  hooks.step_csv = &steps;
  hooks.episode_csv = &episodes;
  const auto result = run( env, hp, hooks );
  CHECK( result.episodes.size() == 1 );
  CHECK( result.best_flow.size() == 1 );
  // exactly one data row after each header
  const std::string step_text = steps.str();
  const std::string episode_text = episodes.str();
  CHECK( std::count( step_text.begin(), step_text.end(), '\n' ) == 2 );
  CHECK( std::count( episode_text.begin(), episode_text.end(), '\n' ) == 2 );
}

TEST_CASE( "runs with one seed are bit-identical" )
{
  const aig design = make_max( 4 );
  hyperparams hp;
  hp.episodes = 3;
  hp.iterations = 5;
  hp.seed = 42;
  std::string first, second;
  for ( auto* sink : { &first, &second } )
  {
    synthesis_env env( design, levels( design ).max_level, hp.iterations );
    std::ostringstream steps, episodes;
    run_hooks hooks;
    hooks.step_csv = &steps;
    hooks.episode_csv = &episodes;
    run( env, hp, hooks );
    *sink = steps.str() + episodes.str();
  }
  CHECK( first == second );
}

TEST_CASE( "trajectory length never exceeds the cap and actions stay in range" )
{
  const aig design = make_square( 4 );
  synthesis_env env( design, levels( design ).max_level, 4 );
  hyperparams hp;
  hp.episodes = 2;
  hp.iterations = 4;
  hp.seed = 9;
  std::ostringstream steps;
  run_hooks hooks;
  hooks.step_csv = &steps;
  run( env, hp, hooks );
  // header + 2 episodes x 4 iterations
  const std::string step_text = steps.str();
  CHECK( std::count( step_text.begin(), step_text.end(), '\n' ) == 9 );
  std::istringstream in( step_text );
  std::string line;
  std::getline( in, line );
  while ( std::getline( in, line ) )
  {
    const auto first = line.find( ',' );
    const auto second = line.find( ',', first + 1 );
    const auto third = line.find( ',', second + 1 );
    const std::string name = line.substr( second + 1, third - second - 1 );
    CHECK( transform_from_name( name ).has_value() );
  }
}

TEST_CASE( "agent checkpoints reload" )
{
  hyperparams hp;
  rng64 init( 173 );
  a2c_agent agent( hp, init );
  agent.save( "actor_test.ckpt", "critic_test.ckpt" );
  rng64 init2( 999 );
  a2c_agent other( hp, init2 );
  REQUIRE( other.load( "actor_test.ckpt", "critic_test.ckpt" ) );
  const auto s = dummy_state( 0.4 );
  CHECK( other.policy( s ) == agent.policy( s ) );
  CHECK( other.value( s ) == agent.value( s ) );
  std::remove( "actor_test.ckpt" );
  std::remove( "critic_test.ckpt" );
}
