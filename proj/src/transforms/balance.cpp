#include "aigopt/transforms.hpp"

#include <functional>

#include "transform_util.hpp"

namespace aigopt {

namespace {

struct balancer {
  const aig& g;
  aig_builder builder;
  std::vector<uint32_t> refs;       // fanout counts in the old graph
  std::vector<literal> map;         // old node -> new literal
  std::vector<uint8_t> mapped;
  std::vector<uint32_t> new_level;  // per new node index

  explicit balancer( const aig& graph ) : g( graph ), builder( graph.num_cis() )
  {
    refs.assign( g.node_count(), 0 );
    for ( uint32_t i = g.first_and(); i < g.node_count(); ++i )
    {
      ++refs[g.node( i ).fanin0.index()];
      ++refs[g.node( i ).fanin1.index()];
    }
    for ( const auto& l : g.outputs() )
    {
      ++refs[l.index()];
    }
    for ( const auto& l : g.latch_next() )
    {
      ++refs[l.index()];
    }
    map.assign( g.node_count(), lit_false );
    mapped.assign( g.node_count(), 0 );
    new_level.assign( g.first_and(), 0 );
    map[0] = lit_false;
    mapped[0] = 1;
    for ( uint32_t i = 1; i < g.first_and(); ++i )
    {
      map[i] = literal( i, false );
      mapped[i] = 1;
    }
  }

  uint32_t level_of( literal l ) const { return new_level[l.index()]; }

  literal make( literal a, literal b )
  {
    const literal r = builder.add_and( a, b );
    if ( r.index() >= new_level.size() )
    {
      new_level.resize( r.index() + 1, 0 );
      new_level[r.index()] = 1 + std::max( level_of( a ), level_of( b ) );
    }
    return r;
  }

  // leaves of the maximal AND tree rooted at node: expansion stops at
  // complemented edges, CIs and multi-fanout nodes
  void collect_tree( literal edge, std::vector<literal>& leaves ) const
  {
    const uint32_t x = edge.index();
    if ( !edge.complemented() && g.is_and( x ) && refs[x] == 1 )
    {
      collect_tree( g.node( x ).fanin0, leaves );
      collect_tree( g.node( x ).fanin1, leaves );
    }
    else
    {
      leaves.push_back( edge );
    }
  }

  literal balance_node( uint32_t x )
  {
    if ( mapped[x] )
    {
      return map[x];
    }
    std::vector<literal> leaves;
    collect_tree( g.node( x ).fanin0, leaves );
    collect_tree( g.node( x ).fanin1, leaves );
    std::vector<std::pair<uint32_t, literal>> operands;
    operands.reserve( leaves.size() );
    for ( const auto& leaf : leaves )
    {
      const literal nl = balance_node( leaf.index() ) ^ leaf.complemented();
      operands.emplace_back( level_of( nl ), nl );
    }
    const literal r = detail::make_balanced(
        std::move( operands ), [this]( literal l ) { return level_of( l ); },
        [this]( literal a, literal b ) { return make( a, b ); } );
    map[x] = r;
    mapped[x] = 1;
    return r;
  }
};

} // namespace

aig balance( const aig& g )
{
  balancer b( g );
  std::vector<literal> outputs;
  outputs.reserve( g.num_outputs() );
  for ( const auto& l : g.outputs() )
  {
    outputs.push_back( b.balance_node( l.index() ) ^ l.complemented() );
  }
  std::vector<literal> latch_next;
  latch_next.reserve( g.num_latches() );
  for ( const auto& l : g.latch_next() )
  {
    latch_next.push_back( b.balance_node( l.index() ) ^ l.complemented() );
  }
  aig result = b.builder.build( g.num_latches(), latch_next, outputs );
  if ( levels( result ).max_level > levels( g ).max_level )
  {
    return strash( g ); // keep the depth contract when restructuring backfires
  }
  return result;
}

} // namespace aigopt
