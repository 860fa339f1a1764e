#include "aigopt/transforms.hpp"
#include "transform_util.hpp"

namespace aigopt {

namespace {

constexpr uint32_t max_cone_leaves = 12;
constexpr uint32_t max_isop_cubes = 48;
constexpr size_t max_cone_volume = 400;

// reconvergence-driven cut: grow from the fanins, preferring expansions
// that add the fewest fresh leaves
std::vector<uint32_t> reconvergence_cut( const work_aig& w, uint32_t n, uint32_t limit )
{
  std::vector<uint32_t> leaves{ w.fanin0( n ).index(), w.fanin1( n ).index() };
  std::sort( leaves.begin(), leaves.end() );
  leaves.erase( std::unique( leaves.begin(), leaves.end() ), leaves.end() );

  for ( uint32_t round = 0; round < 4 * limit; ++round )
  {
    uint32_t best_leaf = UINT32_MAX;
    uint32_t best_cost = UINT32_MAX;
    for ( const uint32_t leaf : leaves )
    {
      if ( !w.is_and_index( leaf ) )
      {
        continue;
      }
      uint32_t fresh = 0;
      for ( const uint32_t f : { w.fanin0( leaf ).index(), w.fanin1( leaf ).index() } )
      {
        if ( std::find( leaves.begin(), leaves.end(), f ) == leaves.end() )
        {
          ++fresh;
        }
      }
      if ( leaves.size() - 1 + fresh > limit )
      {
        continue;
      }
      if ( fresh < best_cost || ( fresh == best_cost && leaf < best_leaf ) )
      {
        best_cost = fresh;
        best_leaf = leaf;
      }
    }
    if ( best_leaf == UINT32_MAX )
    {
      break;
    }
    leaves.erase( std::find( leaves.begin(), leaves.end(), best_leaf ) );
    for ( const uint32_t f : { w.fanin0( best_leaf ).index(), w.fanin1( best_leaf ).index() } )
    {
      if ( std::find( leaves.begin(), leaves.end(), f ) == leaves.end() )
      {
        leaves.push_back( f );
      }
    }
  }
  std::sort( leaves.begin(), leaves.end() );
  return leaves;
}

// nodes strictly inside the cone between the leaves and root
size_t cone_volume( const work_aig& w, uint32_t root, const std::vector<uint32_t>& leaves, size_t cap )
{
  std::vector<uint32_t> stack{ root };
  std::vector<uint32_t> visited;
  while ( !stack.empty() && visited.size() <= cap )
  {
    const uint32_t x = stack.back();
    stack.pop_back();
    if ( std::find( visited.begin(), visited.end(), x ) != visited.end() ||
         std::find( leaves.begin(), leaves.end(), x ) != leaves.end() )
    {
      continue;
    }
    visited.push_back( x );
    stack.push_back( w.fanin0( x ).index() );
    stack.push_back( w.fanin1( x ).index() );
  }
  return visited.size();
}

} // namespace

aig refactor( const aig& g, bool zero_cost )
{
  work_aig w( g );
  const uint32_t end = w.size();
  for ( uint32_t n = w.first_and(); n < end; ++n )
  {
    if ( !w.is_alive( n ) )
    {
      continue;
    }
    const uint32_t mffc = w.mffc_size( n );
    if ( mffc <= 1 )
    {
      // a winning candidate would have to materialize in at most one fresh
      // node, which a multi-leaf sum-of-products cannot do
      continue;
    }
    const auto leaves = reconvergence_cut( w, n, max_cone_leaves );
    if ( leaves.size() < 3 || leaves.size() > max_cone_leaves )
    {
      continue;
    }
    if ( cone_volume( w, n, leaves, max_cone_volume ) > max_cone_volume )
    {
      continue;
    }

    const uint32_t num_vars = static_cast<uint32_t>( leaves.size() );
    std::unordered_map<uint32_t, uint32_t> leaf_var;
    for ( uint32_t k = 0; k < num_vars; ++k )
    {
      leaf_var.emplace( leaves[k], k );
    }
    std::unordered_map<uint32_t, ttd> values;
    const ttd func = detail::cone_function( w, n, num_vars, leaf_var, values );
    const auto cover = isop( func, max_isop_cubes );
    if ( !cover )
    {
      continue;
    }

    const uint32_t wm = w.watermark();
    bool used_self = false;
    bool aborted = false;
    auto make = [&]( literal a, literal b ) {
      const literal r = w.make_and( a, b );
      used_self |= r.index() == n;
      aborted |= w.nodes_added( wm ) > mffc; // cannot pay off any more
      return r;
    };
    auto level_of = [&]( literal l ) { return w.is_and_index( l.index() ) ? w.level( l.index() ) : 0u; };

    literal root;
    if ( cover->empty() )
    {
      root = lit_false;
    }
    else
    {
      std::vector<std::pair<uint32_t, literal>> cube_lits;
      bool tautology = false;
      for ( const auto& c : *cover )
      {
        std::vector<std::pair<uint32_t, literal>> lits;
        for ( uint32_t v = 0; v < num_vars; ++v )
        {
          if ( c.pos & ( 1u << v ) )
          {
            const literal l( leaves[v], false );
            lits.emplace_back( level_of( l ), l );
          }
          else if ( c.neg & ( 1u << v ) )
          {
            const literal l( leaves[v], true );
            lits.emplace_back( level_of( l ), l );
          }
        }
        if ( lits.empty() )
        {
          tautology = true;
          break;
        }
        const literal cl = detail::make_balanced( std::move( lits ), level_of, make );
        if ( aborted )
        {
          break;
        }
        cube_lits.emplace_back( level_of( cl ), !cl ); // inverted for the De Morgan OR
      }
      if ( tautology )
      {
        root = lit_true;
      }
      else if ( !aborted )
      {
        root = !detail::make_balanced( std::move( cube_lits ), level_of, make );
      }
    }

    if ( aborted || used_self || root.index() == n )
    {
      w.rollback_to( wm );
      continue;
    }
    const int64_t added = w.nodes_added( wm );
    const int64_t freed = w.freed_if_replaced( n, root.index() );
    const int64_t net = freed - added;
    if ( net < ( zero_cost ? 0 : 1 ) )
    {
      w.rollback_to( wm );
      continue;
    }
    w.replace( n, root );
  }
  return w.to_aig();
}

} // namespace aigopt
