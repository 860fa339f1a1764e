#include "aigopt/baselines.hpp"

#include <future>
#include <sstream>

#include "aigopt/rng.hpp"

namespace aigopt {

greedy_result greedy( const aig& design, uint32_t delay_constraint, const npn_library& lib,
                      bool parallel )
{
  greedy_result result;
  aig current = strash( design );

  while ( true )
  {
    std::array<aig, num_transforms> candidates;
    if ( parallel )
    {
      std::array<std::future<aig>, num_transforms> futures;
      for ( size_t k = 0; k < num_transforms; ++k )
      {
        futures[k] = std::async( std::launch::async, [&current, &lib, k] {
          return apply_transform( current, all_transforms[k], lib );
        } );
      }
      for ( size_t k = 0; k < num_transforms; ++k )
      {
        candidates[k] = futures[k].get();
      }
    }
    else
    {
      for ( size_t k = 0; k < num_transforms; ++k )
      {
        candidates[k] = apply_transform( current, all_transforms[k], lib );
      }
    }

    size_t chosen = 0;
    metrics chosen_m = metrics_of( candidates[0], delay_constraint );
    for ( size_t k = 1; k < num_transforms; ++k )
    {
      const metrics m = metrics_of( candidates[k], delay_constraint );
      if ( m.area_proxy < chosen_m.area_proxy ||
           ( m.area_proxy == chosen_m.area_proxy && m.delay_proxy < chosen_m.delay_proxy ) )
      {
        chosen = k;
        chosen_m = m;
      }
    }

    const bool repeated =
        !result.history.empty() && result.history.back().m.area_proxy == chosen_m.area_proxy;
    current = std::move( candidates[chosen] );
    result.history.push_back( { all_transforms[chosen], chosen_m } );
    if ( repeated )
    {
      result.stop_reason = "two consecutive iterations yielded the same area";
      break;
    }
  }

  result.final_design = std::move( current );
  return result;
}

script_result run_script( const aig& design, const std::vector<transform_id>& flow,
                          uint32_t delay_constraint, const npn_library& lib )
{
  script_result r;
  r.design = strash( design );
  for ( const auto t : flow )
  {
    r.design = apply_transform( r.design, t, lib );
  }
  r.m = metrics_of( r.design, delay_constraint );
  return r;
}

std::vector<transform_id> parse_script( const std::string& text )
{
  std::vector<transform_id> flow;
  std::istringstream in( text );
  std::string line;
  size_t line_no = 0;
  while ( std::getline( in, line ) )
  {
    ++line_no;
    // trim
    const auto begin = line.find_first_not_of( " \t\r" );
    if ( begin == std::string::npos )
    {
      continue;
    }
    const auto end = line.find_last_not_of( " \t\r" );
    const std::string name = line.substr( begin, end - begin + 1 );
    if ( name.empty() || name[0] == '#' )
    {
      continue;
    }
    const auto t = transform_from_name( name );
    if ( !t )
    {
      throw script_error( "unknown transform '" + name + "' on line " + std::to_string( line_no ) );
    }
    flow.push_back( *t );
  }
  return flow;
}

search_result random_search( const aig& design, uint32_t delay_constraint, uint32_t episodes,
                             uint32_t iterations, uint64_t seed, const npn_library& lib )
{
  if ( episodes == 0 || iterations == 0 )
  {
    throw std::invalid_argument( "random search needs a positive budget" );
  }
  synthesis_env env( design, delay_constraint, iterations, lib );
  rng64 rng( seed );

  search_result result;
  bool have_best = false;
  for ( uint32_t ep = 0; ep < episodes; ++ep )
  {
    env.reset();
    for ( uint32_t it = 0; it < iterations; ++it )
    {
      env.step( all_transforms[rng.below( num_transforms )] );
    }
    const auto& best = env.best_design();
    if ( !have_best || improves_on( best.m, result.best_metrics ) )
    {
      result.best_design = best.design;
      result.best_metrics = best.m;
      result.best_flow = best.flow;
      have_best = true;
    }
  }
  return result;
}

} // namespace aigopt
