#include "aigopt/env.hpp"

#include "aigopt/aiger_io.hpp"

namespace aigopt {

direction direction_of( uint32_t previous, uint32_t next )
{
  if ( next < previous )
  {
    return direction::decrease;
  }
  if ( next > previous )
  {
    return direction::increase;
  }
  return direction::none;
}

reward_table reward_table::standard()
{
  reward_table t;
  const auto d = static_cast<size_t>( direction::decrease );
  const auto n = static_cast<size_t>( direction::none );
  const auto i = static_cast<size_t>( direction::increase );
  t.met[d] = 3.0;
  t.met[n] = 0.0;
  t.met[i] = -1.0;
  t.not_met[d][d] = 3.0;
  t.not_met[d][n] = 2.0;
  t.not_met[d][i] = 1.0;
  t.not_met[n][d] = 2.0;
  t.not_met[n][n] = 0.0;
  t.not_met[n][i] = -2.0;
  t.not_met[i][d] = -1.0;
  t.not_met[i][n] = -2.0;
  t.not_met[i][i] = -3.0;
  return t;
}

double reward( const metrics& prev, const metrics& next, const reward_table& table )
{
  const auto area = static_cast<size_t>( direction_of( prev.area_proxy, next.area_proxy ) );
  if ( next.constraint_met )
  {
    return table.met[area];
  }
  const auto delay = static_cast<size_t>( direction_of( prev.delay_proxy, next.delay_proxy ) );
  return table.not_met[delay][area];
}

state_vector state_of( const aig_stats& raw, const aig_stats& basis )
{
  auto norm = []( double value, double base ) { return base == 0.0 ? 0.0 : value / base; };
  state_vector s;
  s.features[0] = norm( raw.num_pi + raw.num_po, basis.num_pi + basis.num_po );
  s.features[1] = norm( raw.num_nodes, basis.num_nodes );
  s.features[2] = norm( raw.num_edges, basis.num_edges );
  s.features[3] = norm( raw.num_levels, basis.num_levels );
  s.features[4] = norm( raw.num_latches, basis.num_latches );
  s.features[5] = norm( raw.pct_ands, basis.pct_ands );
  s.features[6] = norm( raw.pct_nots, basis.pct_nots );
  return s;
}

metrics metrics_of( const aig& g, uint32_t delay_constraint )
{
  metrics m;
  m.area_proxy = g.num_ands();
  m.delay_proxy = levels( g ).max_level;
  m.constraint_met = m.delay_proxy <= delay_constraint;
  return m;
}

bool improves_on( const metrics& candidate, const metrics& incumbent )
{
  if ( candidate.constraint_met != incumbent.constraint_met )
  {
    return candidate.constraint_met;
  }
  if ( candidate.constraint_met )
  {
    return candidate.area_proxy < incumbent.area_proxy;
  }
  return candidate.delay_proxy < incumbent.delay_proxy;
}

synthesis_env::synthesis_env( const env_config& config, const npn_library& lib, reward_table table )
    : config_( config ), lib_( lib ), table_( table ),
      initial_( strash( read_aiger_file( config.benchmark_path ) ) )
{
  require_combinational( initial_ );
  basis_ = extract_stats( initial_ );
}

synthesis_env::synthesis_env( aig design, uint32_t delay_constraint, uint32_t max_iterations,
                              const npn_library& lib, reward_table table )
    : config_{ "", delay_constraint, max_iterations }, lib_( lib ), table_( table ),
      initial_( strash( design ) )
{
  require_combinational( initial_ );
  basis_ = extract_stats( initial_ );
}

state_vector synthesis_env::reset()
{
  current_ = initial_;
  steps_ = 0;
  in_episode_ = true;
  actions_.clear();
  best_.reset();
  return state_of( basis_, basis_ );
}

synthesis_env::step_result synthesis_env::step( transform_id action )
{
  if ( !in_episode_ )
  {
    throw std::logic_error( "step before reset" );
  }
  if ( steps_ >= config_.max_iterations )
  {
    throw episode_finished_error{};
  }
  const metrics prev = metrics_of( current_, config_.delay_constraint );
  aig next = apply_transform( current_, action, lib_ );
  const metrics next_m = metrics_of( next, config_.delay_constraint );

  actions_.push_back( action );
  ++steps_;
  current_ = std::move( next );

  if ( !best_ || improves_on( next_m, best_->m ) )
  {
    best_ = best_snapshot{ current_, next_m, actions_ };
  }

  step_result r;
  r.state = state_of( extract_stats( current_ ), basis_ );
  r.reward = reward( prev, next_m, table_ );
  r.m = next_m;
  return r;
}

const synthesis_env::best_snapshot& synthesis_env::best_design() const
{
  if ( !best_ )
  {
    throw std::logic_error( "no step has been taken yet" );
  }
  return *best_;
}

} // namespace aigopt
