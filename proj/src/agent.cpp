#include "aigopt/agent.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace aigopt {

transform_id sample_action( const std::vector<double>& probs, rng64& rng )
{
  if ( probs.size() != num_transforms )
  {
    throw std::invalid_argument( "probability vector must cover the action space" );
  }
  double total = 0.0;
  for ( const double p : probs )
  {
    if ( !std::isfinite( p ) || p < 0.0 )
    {
      throw std::invalid_argument( "degenerate action probabilities" );
    }
    total += p;
  }
  if ( std::abs( total - 1.0 ) > 1e-6 )
  {
    throw std::invalid_argument( "action probabilities do not sum to one" );
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  for ( size_t k = 0; k < probs.size(); ++k )
  {
    acc += probs[k];
    if ( u < acc )
    {
      return all_transforms[k];
    }
  }
  return all_transforms.back();
}

std::vector<double> discount_rewards( const std::vector<double>& rewards, double gamma )
{
  if ( rewards.empty() )
  {
    throw std::invalid_argument( "cannot discount an empty reward list" );
  }
  std::vector<double> returns( rewards.size() );
  double acc = 0.0;
  for ( size_t t = rewards.size(); t-- > 0; )
  {
    acc = rewards[t] + gamma * acc;
    returns[t] = acc;
  }
  return returns;
}

double advantage( double r, double v_next, double v, double gamma )
{
  return r + gamma * v_next - v;
}

double td_error( double r, double v_next, double v, double gamma )
{
  return advantage( r, v_next, v, gamma );
}

a2c_agent::a2c_agent( const hyperparams& hp, rng64& init_rng ) : hp_( hp )
{
  std::vector<uint32_t> actor_dims{ static_cast<uint32_t>( state_size ) };
  actor_dims.insert( actor_dims.end(), hp.actor_hidden.begin(), hp.actor_hidden.end() );
  actor_dims.push_back( static_cast<uint32_t>( num_transforms ) );
  std::vector<uint32_t> critic_dims{ static_cast<uint32_t>( state_size ) };
  critic_dims.insert( critic_dims.end(), hp.critic_hidden.begin(), hp.critic_hidden.end() );
  critic_dims.push_back( 1 );

  actor_ = mlp::make( actor_dims );
  critic_ = mlp::make( critic_dims );
  xavier_init( actor_, init_rng );
  xavier_init( critic_, init_rng );
  actor_adam_ = adam_state::zeros_like( actor_ );
  critic_adam_ = adam_state::zeros_like( critic_ );
}

std::vector<double> a2c_agent::policy( const state_vector& s ) const
{
  const std::vector<double> input( s.features.begin(), s.features.end() );
  return softmax( forward( actor_, input ) );
}

double a2c_agent::value( const state_vector& s ) const
{
  const std::vector<double> input( s.features.begin(), s.features.end() );
  return forward( critic_, input )[0];
}

loss_report a2c_agent::train_episode( const trajectory& traj )
{
  const size_t k = traj.length();
  if ( k == 0 || traj.states.size() != k || traj.actions.size() != k )
  {
    throw std::logic_error( "incomplete trajectory" );
  }

  const auto returns = discount_rewards( traj.rewards, hp_.discount );

  std::vector<double> values( k );
  for ( size_t t = 0; t < k; ++t )
  {
    values[t] = value( traj.states[t] );
  }

  std::vector<double> advantages( k );
  std::vector<double> critic_targets( k );
  for ( size_t t = 0; t < k; ++t )
  {
    if ( hp_.mode == advantage_mode::discounted_return )
    {
      advantages[t] = returns[t] - values[t];
      critic_targets[t] = returns[t];
    }
    else
    {
      const double v_next = t + 1 < k ? values[t + 1] : 0.0; // terminal bootstrap is zero
      advantages[t] = advantage( traj.rewards[t], v_next, values[t], hp_.discount );
      critic_targets[t] = traj.rewards[t] + hp_.discount * v_next;
    }
  }

  gradients actor_grads = gradients::zeros_like( actor_ );
  gradients critic_grads = gradients::zeros_like( critic_ );
  const double inv_k = 1.0 / static_cast<double>( k );
  loss_report report;

  for ( size_t t = 0; t < k; ++t )
  {
    const std::vector<double> input( traj.states[t].features.begin(), traj.states[t].features.end() );

    forward_cache actor_cache;
    const auto logits = forward( actor_, input, &actor_cache );
    const auto probs = softmax( logits );
    const size_t a = static_cast<size_t>( traj.actions[t] );
    report.actor_loss += -std::log( std::max( probs[a], 1e-300 ) ) * advantages[t] * inv_k;
    std::vector<double> dlogits( probs.size() );
    for ( size_t j = 0; j < probs.size(); ++j )
    {
      dlogits[j] = ( probs[j] - ( j == a ? 1.0 : 0.0 ) ) * advantages[t] * inv_k;
    }
    actor_grads.accumulate( backward( actor_, actor_cache, dlogits ) );

    forward_cache critic_cache;
    const double v = forward( critic_, input, &critic_cache )[0];
    const double residual = v - critic_targets[t];
    report.critic_loss += 0.5 * residual * residual * inv_k;
    critic_grads.accumulate( backward( critic_, critic_cache, { residual * inv_k } ) );
  }

  clip_global_norm( actor_grads, hp_.clip_norm );
  clip_global_norm( critic_grads, hp_.clip_norm );
  adam_step( actor_, actor_grads, actor_adam_, hp_.learning_rate );
  adam_step( critic_, critic_grads, critic_adam_, hp_.learning_rate );
  return report;
}

void a2c_agent::save( const std::string& actor_path, const std::string& critic_path ) const
{
  save_checkpoint( actor_, actor_adam_, actor_path );
  save_checkpoint( critic_, critic_adam_, critic_path );
}

bool a2c_agent::load( const std::string& actor_path, const std::string& critic_path )
{
  return load_checkpoint( actor_, actor_adam_, actor_path ) &&
         load_checkpoint( critic_, critic_adam_, critic_path );
}

void write_step_csv_header( std::ostream& out )
{
  out << "episode,iteration,action,nodes,levels,reward,constraint_met\n";
}

void write_episode_csv_header( std::ostream& out )
{
  out << "episode,total_reward,best_nodes,best_levels,constraint_met\n";
}

run_result run( synthesis_env& env, const hyperparams& hp, const run_hooks& hooks )
{
  rng64 rng( hp.seed );
  a2c_agent agent( hp, rng );

  if ( hooks.step_csv )
  {
    write_step_csv_header( *hooks.step_csv );
  }
  if ( hooks.episode_csv )
  {
    write_episode_csv_header( *hooks.episode_csv );
  }

  run_result result;
  bool have_best = false;

  for ( uint32_t episode = 1; episode <= hp.episodes; ++episode )
  {
    state_vector state = env.reset();
    trajectory traj;
    double total_reward = 0.0;

    for ( uint32_t iteration = 1; iteration <= hp.iterations; ++iteration )
    {
      const auto probs = agent.policy( state );
      const transform_id action = sample_action( probs, rng );
      const auto sr = env.step( action );

      traj.states.push_back( state );
      traj.actions.push_back( action );
      traj.rewards.push_back( sr.reward );
      total_reward += sr.reward;

      if ( hooks.step_csv )
      {
        *hooks.step_csv << episode << ',' << iteration << ',' << transform_name( action ) << ','
                        << sr.m.area_proxy << ',' << sr.m.delay_proxy << ',' << sr.reward << ','
                        << ( sr.m.constraint_met ? 1 : 0 ) << '\n';
      }
      state = sr.state;
    }

    const auto losses = agent.train_episode( traj );
    const auto& episode_best = env.best_design();

    if ( !have_best || improves_on( episode_best.m, result.best_metrics ) )
    {
      result.best_design = episode_best.design;
      result.best_metrics = episode_best.m;
      result.best_flow = episode_best.flow;
      have_best = true;
    }

    episode_row row;
    row.episode = episode;
    row.total_reward = total_reward;
    row.best_nodes = episode_best.m.area_proxy;
    row.best_levels = episode_best.m.delay_proxy;
    row.constraint_met = episode_best.m.constraint_met;
    row.losses = losses;
    result.episodes.push_back( row );

    if ( hooks.episode_csv )
    {
      *hooks.episode_csv << episode << ',' << total_reward << ',' << row.best_nodes << ','
                         << row.best_levels << ',' << ( row.constraint_met ? 1 : 0 ) << '\n';
    }
  }

  if ( hooks.on_finish )
  {
    hooks.on_finish( agent );
  }
  return result;
}

} // namespace aigopt
