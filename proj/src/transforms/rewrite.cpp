#include <set>

#include "aigopt/transforms.hpp"
#include "transform_util.hpp"

namespace aigopt {

namespace {

constexpr size_t max_cut_leaves = 4;
constexpr size_t max_cuts_per_node = 8;
constexpr size_t max_cut_expansions = 64;

using cut_t = std::vector<uint32_t>; // sorted leaf indices

std::vector<cut_t> enumerate_cuts( const work_aig& w, uint32_t n )
{
  std::set<cut_t> seen;
  std::vector<cut_t> queue;
  queue.push_back( { n } );
  seen.insert( queue.back() );
  size_t expansions = 0;
  for ( size_t qi = 0; qi < queue.size() && expansions < max_cut_expansions; ++qi )
  {
    const cut_t current = queue[qi];
    for ( const uint32_t leaf : current )
    {
      if ( !w.is_and_index( leaf ) )
      {
        continue;
      }
      cut_t next;
      next.reserve( current.size() + 1 );
      for ( const uint32_t l : current )
      {
        if ( l != leaf )
        {
          next.push_back( l );
        }
      }
      for ( const uint32_t f : { w.fanin0( leaf ).index(), w.fanin1( leaf ).index() } )
      {
        if ( std::find( next.begin(), next.end(), f ) == next.end() )
        {
          next.push_back( f );
        }
      }
      std::sort( next.begin(), next.end() );
      if ( next.size() > max_cut_leaves || !seen.insert( next ).second )
      {
        continue;
      }
      ++expansions;
      queue.push_back( std::move( next ) );
    }
  }
  // drop the trivial cut, order by (size, lex), keep the best few
  std::vector<cut_t> cuts( queue.begin() + 1, queue.end() );
  std::sort( cuts.begin(), cuts.end(), []( const cut_t& a, const cut_t& b ) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  } );
  if ( cuts.size() > max_cuts_per_node )
  {
    cuts.resize( max_cuts_per_node );
  }
  return cuts;
}

uint16_t cut_function16( const work_aig& w, uint32_t root, const cut_t& leaves )
{
  std::unordered_map<uint32_t, uint16_t> values;
  for ( size_t k = 0; k < leaves.size(); ++k )
  {
    values.emplace( leaves[k], tt4_vars[k] );
  }
  values.emplace( 0, 0x0000 );
  std::vector<uint32_t> stack{ root };
  while ( !stack.empty() )
  {
    const uint32_t x = stack.back();
    if ( values.count( x ) )
    {
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
    const uint16_t a = w.fanin0( x ).complemented() ? static_cast<uint16_t>( ~i0->second ) : i0->second;
    const uint16_t b = w.fanin1( x ).complemented() ? static_cast<uint16_t>( ~i1->second ) : i1->second;
    values.emplace( x, static_cast<uint16_t>( a & b ) );
    stack.pop_back();
  }
  return values.at( root );
}

struct candidate_score {
  int64_t net = INT64_MIN;
  uint32_t root_level = 0;
  size_t cut_index = 0;
};

} // namespace

aig rewrite( const aig& g, bool zero_cost, const npn_library& lib )
{
  work_aig w( g );
  const uint32_t end = w.size();
  for ( uint32_t n = w.first_and(); n < end; ++n )
  {
    if ( !w.is_alive( n ) )
    {
      continue;
    }
    const auto cuts = enumerate_cuts( w, n );
    candidate_score best;
    bool have_best = false;

    for ( size_t ci = 0; ci < cuts.size(); ++ci )
    {
      const auto& cut = cuts[ci];
      const uint16_t func = cut_function16( w, n, cut );
      std::array<literal, 4> inputs{ lit_false, lit_false, lit_false, lit_false };
      for ( size_t k = 0; k < cut.size(); ++k )
      {
        inputs[k] = literal( cut[k], false );
      }
      const uint32_t wm = w.watermark();
      bool used_self = false;
      const literal root = lib.instantiate( func, inputs, lit_false, [&]( literal a, literal b ) {
        const literal r = w.make_and( a, b );
        used_self |= r.index() == n;
        return r;
      } );
      if ( used_self || root.index() == n )
      {
        w.rollback_to( wm );
        continue;
      }
      const int64_t added = w.nodes_added( wm );
      const int64_t freed = w.freed_if_replaced( n, root.index() );
      const int64_t net = freed - added;
      const uint32_t root_level = w.is_and_index( root.index() ) ? w.level( root.index() ) : 0;
      w.rollback_to( wm );

      if ( net < ( zero_cost ? 0 : 1 ) )
      {
        continue;
      }
      const bool better =
          !have_best || net > best.net ||
          ( net == best.net && ( root_level < best.root_level ||
                                 ( root_level == best.root_level && cuts[ci] < cuts[best.cut_index] ) ) );
      if ( better )
      {
        best = { net, root_level, ci };
        have_best = true;
      }
    }

    if ( have_best )
    {
      const auto& cut = cuts[best.cut_index];
      const uint16_t func = cut_function16( w, n, cut );
      std::array<literal, 4> inputs{ lit_false, lit_false, lit_false, lit_false };
      for ( size_t k = 0; k < cut.size(); ++k )
      {
        inputs[k] = literal( cut[k], false );
      }
      const literal root = lib.instantiate( func, inputs, lit_false, [&]( literal a, literal b ) {
        return w.make_and( a, b );
      } );
      w.replace( n, root );
    }
  }
  return w.to_aig();
}

} // namespace aigopt
