#pragma once

// Shared test helpers: random graph generators.

#include <vector>

#include "aigopt/aig.hpp"
#include "aigopt/rng.hpp"

namespace aigopt::testing {

/*! \brief Random strashed graph built through the hashing builder. */
inline aig random_aig( rng64& rng, uint32_t max_pis = 10, uint32_t max_nodes = 60 )
{
  const uint32_t num_pis = 2 + static_cast<uint32_t>( rng.below( max_pis - 1 ) );
  aig_builder b;
  std::vector<literal> pool;
  for ( uint32_t i = 0; i < num_pis; ++i )
  {
    pool.push_back( b.add_ci() );
  }
  const uint32_t target = 2 + static_cast<uint32_t>( rng.below( max_nodes ) );
  for ( uint32_t k = 0; k < target; ++k )
  {
    const literal a = pool[rng.below( pool.size() )] ^ ( rng.below( 2 ) == 1 );
    const literal c = pool[rng.below( pool.size() )] ^ ( rng.below( 2 ) == 1 );
    const literal r = b.add_and( a, c );
    pool.push_back( r );
  }
  std::vector<literal> outputs;
  const uint32_t num_outputs = 1 + static_cast<uint32_t>( rng.below( 3 ) );
  outputs.push_back( pool.back() ^ ( rng.below( 2 ) == 1 ) );
  for ( uint32_t k = 1; k < num_outputs; ++k )
  {
    outputs.push_back( pool[rng.below( pool.size() )] ^ ( rng.below( 2 ) == 1 ) );
  }
  return b.build( outputs );
}

/*! \brief Random graph assembled from raw parts: may contain duplicate AND
 * pairs, constant fanins and dead nodes.  Valid input for strash and the
 * AIGER writer. */
inline aig random_raw_aig( rng64& rng, uint32_t max_pis = 10, uint32_t max_nodes = 40 )
{
  const uint32_t num_pis = 1 + static_cast<uint32_t>( rng.below( max_pis ) );
  const uint32_t num_ands = static_cast<uint32_t>( rng.below( max_nodes + 1 ) );
  std::vector<aig_node> nodes;
  const uint32_t first_and = 1 + num_pis;
  for ( uint32_t k = 0; k < num_ands; ++k )
  {
    const uint32_t self = first_and + k;
    const literal a( static_cast<uint32_t>( rng.below( self ) ), rng.below( 2 ) == 1 );
    const literal c( static_cast<uint32_t>( rng.below( self ) ), rng.below( 2 ) == 1 );
    nodes.push_back( { a, c } );
  }
  const uint32_t total = first_and + num_ands;
  std::vector<literal> outputs;
  const uint32_t num_outputs = 1 + static_cast<uint32_t>( rng.below( 3 ) );
  for ( uint32_t k = 0; k < num_outputs; ++k )
  {
    outputs.emplace_back( static_cast<uint32_t>( rng.below( total ) ), rng.below( 2 ) == 1 );
  }
  return aig::from_parts( num_pis, 0, std::move( nodes ), {}, std::move( outputs ) );
}

} // namespace aigopt::testing
