#pragma once

// Shared helpers for the optimization passes (internal).

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "aigopt/truth.hpp"
#include "aigopt/work_aig.hpp"

namespace aigopt::detail {

/*! \brief Evaluates the functions of a cone over a fixed leaf set.
 *
 * leaf_var maps node index -> variable slot; every path from root to the
 * CIs must cross a mapped node.  Results are memoized in `values`.
 */
inline const ttd& cone_function( const work_aig& w, uint32_t root, uint32_t num_vars,
                                 const std::unordered_map<uint32_t, uint32_t>& leaf_var,
                                 std::unordered_map<uint32_t, ttd>& values )
{
  if ( const auto it = values.find( root ); it != values.end() )
  {
    return it->second;
  }
  std::vector<uint32_t> stack{ root };
  while ( !stack.empty() )
  {
    const uint32_t x = stack.back();
    if ( values.count( x ) )
    {
      stack.pop_back();
      continue;
    }
    if ( const auto it = leaf_var.find( x ); it != leaf_var.end() )
    {
      values.emplace( x, ttd::var( num_vars, it->second ) );
      stack.pop_back();
      continue;
    }
    if ( x == 0 )
    {
      values.emplace( x, ttd::constant( num_vars, false ) );
      stack.pop_back();
      continue;
    }
    const uint32_t c0 = w.fanin0( x ).index();
    const uint32_t c1 = w.fanin1( x ).index();
    const auto i0 = values.find( c0 );
    const auto i1 = values.find( c1 );
    if ( i0 == values.end() )
    {
      stack.push_back( c0 );
      continue;
    }
    if ( i1 == values.end() )
    {
      stack.push_back( c1 );
      continue;
    }
    const ttd a = w.fanin0( x ).complemented() ? ~i0->second : i0->second;
    const ttd b = w.fanin1( x ).complemented() ? ~i1->second : i1->second;
    values.emplace( x, a & b );
    stack.pop_back();
  }
  return values.at( root );
}

/*! \brief Balanced AND of a literal list, pairing lowest levels first. */
template<typename LevelOf, typename MakeAnd>
auto make_balanced( std::vector<std::pair<uint32_t, aigopt::literal>> operands, LevelOf&& level_of,
                    MakeAnd&& make ) -> aigopt::literal
{
  // operands carry (level, literal); ties break on the literal encoding
  auto cmp = []( const auto& a, const auto& b ) {
    return a.first != b.first ? a.first < b.first : a.second.raw() < b.second.raw();
  };
  std::sort( operands.begin(), operands.end(), cmp );
  while ( operands.size() > 1 )
  {
    const auto a = operands[0];
    const auto b = operands[1];
    operands.erase( operands.begin(), operands.begin() + 2 );
    const aigopt::literal r = make( a.second, b.second );
    const std::pair<uint32_t, aigopt::literal> entry{ level_of( r ), r };
    operands.insert( std::lower_bound( operands.begin(), operands.end(), entry, cmp ), entry );
  }
  return operands.empty() ? aigopt::lit_true : operands[0].second;
}

} // namespace aigopt::detail
