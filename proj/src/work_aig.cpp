#include "aigopt/work_aig.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace aigopt {

work_aig::work_aig( const aig& g )
    : num_inputs_( g.num_inputs() ), num_latches_( g.num_latches() )
{
  nodes_.resize( g.node_count() );
  fanouts_.resize( g.node_count() );
  for ( uint32_t i = g.first_and(); i < g.node_count(); ++i )
  {
    const auto& n = g.node( i );
    literal a = n.fanin0;
    literal b = n.fanin1;
    if ( b < a )
    {
      std::swap( a, b );
    }
    if ( a.is_constant() || a.index() == b.index() )
    {
      throw aig_error( "work_aig requires a strashed graph (degenerate AND fanins)" );
    }
    if ( !hash_.emplace( key_of( a, b ), i ).second )
    {
      throw aig_error( "work_aig requires a strashed graph (duplicate AND)" );
    }
    nodes_[i].f0 = a;
    nodes_[i].f1 = b;
    nodes_[i].level = 1 + std::max( nodes_[a.index()].level, nodes_[b.index()].level );
    ++nodes_[a.index()].nref;
    ++nodes_[b.index()].nref;
    fanouts_[a.index()].push_back( i );
    fanouts_[b.index()].push_back( i );
    ++live_ands_;
  }
  outputs_ = g.outputs();
  latch_next_ = g.latch_next();
  for ( const auto& l : outputs_ )
  {
    ++nodes_[l.index()].nref;
  }
  for ( const auto& l : latch_next_ )
  {
    ++nodes_[l.index()].nref;
  }
}

literal work_aig::resolve( literal l ) const
{
  while ( nodes_[l.index()].st == node_state::alias )
  {
    l = nodes_[l.index()].alias_to ^ l.complemented();
  }
  return l;
}

literal work_aig::make_and( literal a, literal b )
{
  if ( a == lit_false || b == lit_false || a == !b )
  {
    return lit_false;
  }
  if ( a == lit_true )
  {
    return b;
  }
  if ( b == lit_true || a == b )
  {
    return a;
  }
  if ( b < a )
  {
    std::swap( a, b );
  }
  const uint64_t key = key_of( a, b );
  if ( auto it = hash_.find( key ); it != hash_.end() )
  {
    return literal( it->second, false );
  }
  const uint32_t n = size();
  wnode node;
  node.f0 = a;
  node.f1 = b;
  node.level = 1 + std::max( nodes_[a.index()].level, nodes_[b.index()].level );
  nodes_.push_back( node );
  fanouts_.emplace_back();
  ++nodes_[a.index()].nref;
  ++nodes_[b.index()].nref;
  fanouts_[a.index()].push_back( n );
  fanouts_[b.index()].push_back( n );
  hash_.emplace( key, n );
  ++live_ands_;
  return literal( n, false );
}

void work_aig::hash_erase( uint32_t n )
{
  hash_.erase( key_of( nodes_[n].f0, nodes_[n].f1 ) );
}

void work_aig::detach_fanin_edges( uint32_t n, std::vector<uint32_t>& zeroed )
{
  for ( const literal f : { nodes_[n].f0, nodes_[n].f1 } )
  {
    const uint32_t x = f.index();
    auto& list = fanouts_[x];
    const auto it = std::find( list.begin(), list.end(), n );
    if ( it != list.end() )
    {
      *it = list.back();
      list.pop_back();
    }
    if ( --nodes_[x].nref == 0 && is_and_index( x ) )
    {
      zeroed.push_back( x );
    }
  }
}

void work_aig::kill( uint32_t n )
{
  std::vector<uint32_t> worklist{ n };
  while ( !worklist.empty() )
  {
    const uint32_t x = worklist.back();
    worklist.pop_back();
    if ( nodes_[x].st != node_state::alive || !is_and_index( x ) || nodes_[x].nref != 0 )
    {
      continue;
    }
    hash_erase( x );
    detach_fanin_edges( x, worklist );
    nodes_[x].st = node_state::dead;
    --live_ands_;
  }
}

void work_aig::unpin( literal l )
{
  const uint32_t x = l.index();
  if ( --nodes_[x].nref != 0 )
  {
    return;
  }
  if ( nodes_[x].st == node_state::alias )
  {
    nodes_[x].st = node_state::dead;
  }
  else if ( nodes_[x].st == node_state::alive && is_and_index( x ) )
  {
    kill( x );
  }
}

void work_aig::replace( uint32_t n, literal with )
{
  if ( !is_and_index( n ) || nodes_[n].st != node_state::alive )
  {
    throw std::logic_error( "replace target must be a live AND node" );
  }
  if ( with.index() == n )
  {
    throw std::logic_error( "replace target and replacement coincide" );
  }

  // Every alias record holds a pin on its target for the whole call, so
  // resolve() can never reach a dead node while entries are pending.  The
  // pins are released (and aliases retired) once the cascade has settled.
  std::vector<std::pair<uint32_t, literal>> session;
  std::deque<uint32_t> queue;
  std::vector<uint32_t> zeroed;

  auto demote = [&]( uint32_t o, literal target ) {
    pin( target );
    session.emplace_back( o, target );
    nodes_[o].st = node_state::alias;
    nodes_[o].alias_to = target;
    --live_ands_;
    queue.push_back( o );
  };

  hash_erase( n );
  zeroed.clear();
  detach_fanin_edges( n, zeroed );
  demote( n, with );
  for ( const uint32_t z : zeroed )
  {
    kill( z );
  }

  while ( !queue.empty() )
  {
    const uint32_t o = queue.front();
    queue.pop_front();
    const literal nl = resolve( nodes_[o].alias_to );

    for ( auto& slot : outputs_ )
    {
      if ( slot.index() == o )
      {
        slot = nl ^ slot.complemented();
        --nodes_[o].nref;
        ++nodes_[nl.index()].nref;
      }
    }
    for ( auto& slot : latch_next_ )
    {
      if ( slot.index() == o )
      {
        slot = nl ^ slot.complemented();
        --nodes_[o].nref;
        ++nodes_[nl.index()].nref;
      }
    }

    while ( !fanouts_[o].empty() )
    {
      const uint32_t f = fanouts_[o].back();
      if ( nodes_[f].st != node_state::alive )
      {
        fanouts_[o].pop_back();
        continue;
      }
      // detach f entirely, substitute, then fold / merge / rewire
      hash_erase( f );
      zeroed.clear();
      detach_fanin_edges( f, zeroed );
      literal g0 = nodes_[f].f0.index() == o ? nl ^ nodes_[f].f0.complemented() : nodes_[f].f0;
      literal g1 = nodes_[f].f1.index() == o ? nl ^ nodes_[f].f1.complemented() : nodes_[f].f1;
      if ( g1 < g0 )
      {
        std::swap( g0, g1 );
      }

      literal folded;
      bool is_folded = true;
      if ( g0 == lit_false || g0 == !g1 )
      {
        folded = lit_false;
      }
      else if ( g0 == lit_true || g0 == g1 )
      {
        folded = g1;
      }
      else
      {
        is_folded = false;
      }

      if ( !is_folded )
      {
        const uint64_t key = key_of( g0, g1 );
        if ( auto it = hash_.find( key ); it != hash_.end() )
        {
          folded = literal( it->second, false );
          is_folded = true;
        }
        else
        {
          nodes_[f].f0 = g0;
          nodes_[f].f1 = g1;
          nodes_[f].level = 1 + std::max( nodes_[g0.index()].level, nodes_[g1.index()].level );
          ++nodes_[g0.index()].nref;
          ++nodes_[g1.index()].nref;
          fanouts_[g0.index()].push_back( f );
          fanouts_[g1.index()].push_back( f );
          hash_.emplace( key, f );
        }
      }
      if ( is_folded )
      {
        demote( f, folded );
      }
      for ( const uint32_t z : zeroed )
      {
        kill( z );
      }
    }
  }

  for ( const auto& [o, target] : session )
  {
    (void)o;
    unpin( target );
  }
  for ( const auto& [o, target] : session )
  {
    (void)target;
    if ( nodes_[o].st == node_state::alias )
    {
      nodes_[o].st = node_state::dead;
    }
  }
}

void work_aig::rollback_to( uint32_t watermark )
{
  std::vector<uint32_t> zeroed;
  while ( size() > watermark )
  {
    const uint32_t n = size() - 1;
    if ( nodes_[n].st != node_state::alive || nodes_[n].nref != 0 )
    {
      throw std::logic_error( "rollback over referenced or non-live nodes" );
    }
    hash_erase( n );
    zeroed.clear();
    detach_fanin_edges( n, zeroed );
    for ( const uint32_t z : zeroed )
    {
      if ( z < watermark )
      {
        throw std::logic_error( "rollback starved a pre-existing node" );
      }
    }
    --live_ands_;
    nodes_.pop_back();
    fanouts_.pop_back();
  }
}

uint32_t work_aig::freed_if_replaced( uint32_t n, uint32_t keep ) const
{
  if ( n == keep || !is_and_index( n ) || nodes_[n].st != node_state::alive )
  {
    return 0;
  }
  std::unordered_map<uint32_t, uint32_t> remaining;
  std::vector<uint32_t> worklist;
  uint32_t freed = 1;
  remaining.emplace( n, 0 );
  worklist.push_back( n );
  while ( !worklist.empty() )
  {
    const uint32_t x = worklist.back();
    worklist.pop_back();
    for ( const literal f : { nodes_[x].f0, nodes_[x].f1 } )
    {
      const uint32_t y = f.index();
      if ( !is_and_index( y ) || nodes_[y].st != node_state::alive )
      {
        continue;
      }
      auto [it, inserted] = remaining.emplace( y, nodes_[y].nref );
      if ( it->second == 0 )
      {
        continue;
      }
      if ( --it->second == 0 && y != keep )
      {
        ++freed;
        worklist.push_back( y );
      }
    }
  }
  return freed;
}

aig work_aig::to_aig() const
{
  aig_builder builder( num_cis() );
  std::vector<literal> map( size(), lit_false );
  std::vector<uint8_t> mapped( size(), 0 );
  std::vector<uint8_t> on_stack( size(), 0 );
  mapped[0] = 1;
  for ( uint32_t i = 1; i < first_and(); ++i )
  {
    map[i] = literal( i, false );
    mapped[i] = 1;
  }

  auto build_cone = [&]( uint32_t root ) {
    if ( mapped[root] )
    {
      return;
    }
    std::vector<std::pair<uint32_t, uint8_t>> stack{ { root, 0 } };
    while ( !stack.empty() )
    {
      auto& [x, phase] = stack.back();
      if ( mapped[x] )
      {
        stack.pop_back();
        continue;
      }
      if ( phase == 0 )
      {
        if ( on_stack[x] )
        {
          throw std::logic_error( "cycle detected while exporting work graph" );
        }
        on_stack[x] = 1;
        phase = 1;
        const uint32_t c0 = nodes_[x].f0.index();
        const uint32_t c1 = nodes_[x].f1.index();
        if ( !mapped[c0] )
        {
          stack.emplace_back( c0, 0 );
        }
        else if ( !mapped[c1] )
        {
          stack.emplace_back( c1, 0 );
        }
      }
      else
      {
        const uint32_t c0 = nodes_[x].f0.index();
        const uint32_t c1 = nodes_[x].f1.index();
        if ( !mapped[c0] )
        {
          stack.emplace_back( c0, 0 );
          continue;
        }
        if ( !mapped[c1] )
        {
          stack.emplace_back( c1, 0 );
          continue;
        }
        const literal a = map[c0] ^ nodes_[x].f0.complemented();
        const literal b = map[c1] ^ nodes_[x].f1.complemented();
        map[x] = builder.add_and( a, b );
        mapped[x] = 1;
        on_stack[x] = 0;
        stack.pop_back();
      }
    }
  };

  for ( const auto& l : outputs_ )
  {
    build_cone( l.index() );
  }
  for ( const auto& l : latch_next_ )
  {
    build_cone( l.index() );
  }
  auto map_lit = [&]( literal l ) { return map[l.index()] ^ l.complemented(); };
  std::vector<literal> outs;
  outs.reserve( outputs_.size() );
  for ( const auto& l : outputs_ )
  {
    outs.push_back( map_lit( l ) );
  }
  std::vector<literal> nexts;
  nexts.reserve( latch_next_.size() );
  for ( const auto& l : latch_next_ )
  {
    nexts.push_back( map_lit( l ) );
  }
  return builder.build( num_latches_, nexts, outs );
}

std::vector<uint32_t> work_aig::recompute_levels()
{
  std::vector<uint32_t> lv( size(), 0 );
  std::vector<uint8_t> done( size(), 0 );
  for ( uint32_t i = 0; i < first_and() && i < size(); ++i )
  {
    done[i] = 1;
  }
  for ( uint32_t n = first_and(); n < size(); ++n )
  {
    if ( nodes_[n].st != node_state::alive || done[n] )
    {
      continue;
    }
    std::vector<uint32_t> stack{ n };
    while ( !stack.empty() )
    {
      const uint32_t x = stack.back();
      if ( done[x] )
      {
        stack.pop_back();
        continue;
      }
      const uint32_t c0 = nodes_[x].f0.index();
      const uint32_t c1 = nodes_[x].f1.index();
      if ( !done[c0] )
      {
        stack.push_back( c0 );
        continue;
      }
      if ( !done[c1] )
      {
        stack.push_back( c1 );
        continue;
      }
      lv[x] = 1 + std::max( lv[c0], lv[c1] );
      done[x] = 1;
      stack.pop_back();
    }
  }
  for ( uint32_t n = 0; n < size(); ++n )
  {
    nodes_[n].level = lv[n];
  }
  return lv;
}

std::vector<uint64_t> work_aig::simulate_all( const std::vector<uint64_t>& ci_words,
                                              size_t words_per_signal ) const
{
  std::vector<uint64_t> value( static_cast<size_t>( size() ) * words_per_signal, 0 );
  std::vector<uint8_t> done( size(), 0 );
  done[0] = 1;
  for ( uint32_t i = 0; i < num_cis(); ++i )
  {
    std::copy_n( ci_words.begin() + static_cast<size_t>( i ) * words_per_signal, words_per_signal,
                 value.begin() + static_cast<size_t>( 1 + i ) * words_per_signal );
    done[1 + i] = 1;
  }
  for ( uint32_t n = first_and(); n < size(); ++n )
  {
    if ( nodes_[n].st != node_state::alive || done[n] )
    {
      continue;
    }
    std::vector<uint32_t> stack{ n };
    while ( !stack.empty() )
    {
      const uint32_t x = stack.back();
      if ( done[x] )
      {
        stack.pop_back();
        continue;
      }
      const uint32_t c0 = nodes_[x].f0.index();
      const uint32_t c1 = nodes_[x].f1.index();
      if ( !done[c0] )
      {
        stack.push_back( c0 );
        continue;
      }
      if ( !done[c1] )
      {
        stack.push_back( c1 );
        continue;
      }
      const uint64_t m0 = nodes_[x].f0.complemented() ? ~0ull : 0ull;
      const uint64_t m1 = nodes_[x].f1.complemented() ? ~0ull : 0ull;
      for ( size_t w = 0; w < words_per_signal; ++w )
      {
        value[x * words_per_signal + w] = ( value[c0 * words_per_signal + w] ^ m0 ) &
                                          ( value[c1 * words_per_signal + w] ^ m1 );
      }
      done[x] = 1;
      stack.pop_back();
    }
  }
  return value;
}

void work_aig::check_consistency() const
{
  std::vector<uint32_t> expected_refs( size(), 0 );
  uint32_t live = 0;
  for ( uint32_t n = first_and(); n < size(); ++n )
  {
    if ( nodes_[n].st != node_state::alive )
    {
      continue;
    }
    ++live;
    const literal a = nodes_[n].f0;
    const literal b = nodes_[n].f1;
    if ( !( a < b ) || a.is_constant() || a.index() == b.index() )
    {
      throw std::logic_error( "live AND with non-canonical fanins" );
    }
    for ( const literal f : { a, b } )
    {
      if ( nodes_[f.index()].st != node_state::alive && is_and_index( f.index() ) )
      {
        throw std::logic_error( "live AND references a non-live node" );
      }
      ++expected_refs[f.index()];
      const auto& list = fanouts_[f.index()];
      if ( std::find( list.begin(), list.end(), n ) == list.end() )
      {
        throw std::logic_error( "missing fanout entry" );
      }
    }
    const auto it = hash_.find( key_of( a, b ) );
    if ( it == hash_.end() || it->second != n )
    {
      throw std::logic_error( "live AND missing from hash" );
    }
  }
  for ( const auto& l : outputs_ )
  {
    ++expected_refs[l.index()];
  }
  for ( const auto& l : latch_next_ )
  {
    ++expected_refs[l.index()];
  }
  if ( live != live_ands_ )
  {
    throw std::logic_error( "live AND count out of sync" );
  }
  if ( hash_.size() != live )
  {
    throw std::logic_error( "hash size out of sync" );
  }
  for ( uint32_t n = 0; n < size(); ++n )
  {
    if ( nodes_[n].st == node_state::alive && nodes_[n].nref != expected_refs[n] )
    {
      throw std::logic_error( "reference count out of sync at node " + std::to_string( n ) );
    }
    if ( nodes_[n].st == node_state::alive && is_and_index( n ) && nodes_[n].nref == 0 )
    {
      throw std::logic_error( "live unreferenced AND node " + std::to_string( n ) );
    }
  }
  // acyclicity comes out in the wash: to_aig throws on a cycle
  (void)to_aig();
}

} // namespace aigopt
