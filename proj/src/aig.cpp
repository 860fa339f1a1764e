#include "aigopt/aig.hpp"

#include <algorithm>
#include <random>

namespace aigopt {

namespace {

uint64_t pair_key( literal a, literal b )
{
  return ( static_cast<uint64_t>( a.raw() ) << 32 ) | b.raw();
}

} // namespace

aig aig::from_parts( uint32_t num_inputs, uint32_t num_latches,
                     std::vector<aig_node> and_nodes,
                     std::vector<literal> latch_next,
                     std::vector<literal> outputs )
{
  if ( latch_next.size() != num_latches )
  {
    throw aig_error( "latch_next size does not match latch count" );
  }
  const uint32_t first_and = 1 + num_inputs + num_latches;
  const uint32_t total = first_and + static_cast<uint32_t>( and_nodes.size() );
  for ( uint32_t i = 0; i < and_nodes.size(); ++i )
  {
    const uint32_t self = first_and + i;
    const auto& n = and_nodes[i];
    if ( n.fanin0.index() >= self || n.fanin1.index() >= self )
    {
      throw aig_error( "AND fanin references node at or above its own index " + std::to_string( self ) );
    }
  }
  for ( const auto& lit : outputs )
  {
    if ( lit.index() >= total )
    {
      throw aig_error( "output references missing node " + std::to_string( lit.index() ) );
    }
  }
  for ( const auto& lit : latch_next )
  {
    if ( lit.index() >= total )
    {
      throw aig_error( "latch next-state references missing node " + std::to_string( lit.index() ) );
    }
  }
  aig g;
  g.num_inputs_ = num_inputs;
  g.num_latches_ = num_latches;
  g.and_nodes_ = std::move( and_nodes );
  g.latch_next_ = std::move( latch_next );
  g.outputs_ = std::move( outputs );
  return g;
}

bool structurally_equal( const aig& a, const aig& b )
{
  if ( a.num_inputs() != b.num_inputs() || a.num_latches() != b.num_latches() )
  {
    return false;
  }
  if ( a.outputs() != b.outputs() || a.latch_next() != b.latch_next() )
  {
    return false;
  }
  if ( a.num_ands() != b.num_ands() )
  {
    return false;
  }
  for ( uint32_t i = 0; i < a.num_ands(); ++i )
  {
    // the fanin pair is unordered (the binary AIGER encoding sorts it)
    const auto& na = a.and_nodes()[i];
    const auto& nb = b.and_nodes()[i];
    const bool same = na.fanin0 == nb.fanin0 && na.fanin1 == nb.fanin1;
    const bool swapped = na.fanin0 == nb.fanin1 && na.fanin1 == nb.fanin0;
    if ( !same && !swapped )
    {
      return false;
    }
  }
  return true;
}

aig_builder::aig_builder( uint32_t num_cis ) : num_cis_( num_cis ) {}

literal aig_builder::add_ci()
{
  ++num_cis_;
  return literal( num_cis_, false );
}

literal aig_builder::ci_literal( uint32_t ci_index ) const
{
  return literal( 1 + ci_index, false );
}

literal aig_builder::add_and( literal a, literal b )
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
  const uint64_t key = pair_key( a, b );
  if ( auto it = hash_.find( key ); it != hash_.end() )
  {
    return literal( it->second, false );
  }
  const uint32_t index = 1 + num_cis_ + static_cast<uint32_t>( nodes_.size() );
  nodes_.push_back( { a, b } );
  hash_.emplace( key, index );
  return literal( index, false );
}

literal aig_builder::add_xor( literal a, literal b )
{
  return !add_and( !add_and( a, !b ), !add_and( !a, b ) );
}

literal aig_builder::add_mux( literal sel, literal then_lit, literal else_lit )
{
  return !add_and( !add_and( sel, then_lit ), !add_and( !sel, else_lit ) );
}

aig aig_builder::build( const std::vector<literal>& outputs ) const
{
  return build( 0, {}, outputs );
}

aig aig_builder::build( uint32_t num_latches, const std::vector<literal>& latch_next,
                        const std::vector<literal>& outputs ) const
{
  const uint32_t first_and = 1 + num_cis_;
  // sweep nodes unreachable from the combinational outputs
  std::vector<bool> reachable( first_and + nodes_.size(), false );
  auto mark = [&]( literal l ) { reachable[l.index()] = true; };
  for ( const auto& l : outputs )
  {
    mark( l );
  }
  for ( const auto& l : latch_next )
  {
    mark( l );
  }
  for ( size_t i = nodes_.size(); i-- > 0; )
  {
    if ( reachable[first_and + i] )
    {
      mark( nodes_[i].fanin0 );
      mark( nodes_[i].fanin1 );
    }
  }
  std::vector<uint32_t> remap( first_and + nodes_.size(), 0 );
  for ( uint32_t i = 0; i < first_and; ++i )
  {
    remap[i] = i;
  }
  std::vector<aig_node> kept;
  kept.reserve( nodes_.size() );
  for ( size_t i = 0; i < nodes_.size(); ++i )
  {
    if ( !reachable[first_and + i] )
    {
      continue;
    }
    const auto f0 = nodes_[i].fanin0;
    const auto f1 = nodes_[i].fanin1;
    kept.push_back( { literal( remap[f0.index()], f0.complemented() ),
                      literal( remap[f1.index()], f1.complemented() ) } );
    remap[first_and + i] = first_and + static_cast<uint32_t>( kept.size() ) - 1;
  }
  auto remap_lit = [&]( literal l ) { return literal( remap[l.index()], l.complemented() ); };
  std::vector<literal> new_outputs;
  new_outputs.reserve( outputs.size() );
  for ( const auto& l : outputs )
  {
    new_outputs.push_back( remap_lit( l ) );
  }
  std::vector<literal> new_latch_next;
  new_latch_next.reserve( latch_next.size() );
  for ( const auto& l : latch_next )
  {
    new_latch_next.push_back( remap_lit( l ) );
  }
  return aig::from_parts( num_cis_ - num_latches, num_latches, std::move( kept ),
                          std::move( new_latch_next ), std::move( new_outputs ) );
}

aig strash( const aig& g )
{
  aig_builder builder( g.num_cis() );
  std::vector<literal> map( g.node_count() );
  map[0] = lit_false;
  for ( uint32_t i = 1; i < g.first_and(); ++i )
  {
    map[i] = literal( i, false );
  }
  for ( uint32_t i = g.first_and(); i < g.node_count(); ++i )
  {
    const auto& n = g.node( i );
    const literal f0 = map[n.fanin0.index()] ^ n.fanin0.complemented();
    const literal f1 = map[n.fanin1.index()] ^ n.fanin1.complemented();
    map[i] = builder.add_and( f0, f1 );
  }
  auto map_lit = [&]( literal l ) { return map[l.index()] ^ l.complemented(); };
  std::vector<literal> outputs;
  outputs.reserve( g.num_outputs() );
  for ( const auto& l : g.outputs() )
  {
    outputs.push_back( map_lit( l ) );
  }
  std::vector<literal> latch_next;
  latch_next.reserve( g.num_latches() );
  for ( const auto& l : g.latch_next() )
  {
    latch_next.push_back( map_lit( l ) );
  }
  return builder.build( g.num_latches(), latch_next, outputs );
}

level_info levels( const aig& g )
{
  level_info info;
  info.level.assign( g.node_count(), 0 );
  for ( uint32_t i = g.first_and(); i < g.node_count(); ++i )
  {
    const auto& n = g.node( i );
    info.level[i] = 1 + std::max( info.level[n.fanin0.index()], info.level[n.fanin1.index()] );
  }
  info.max_level = 0;
  for ( const auto& l : g.outputs() )
  {
    info.max_level = std::max( info.max_level, info.level[l.index()] );
  }
  for ( const auto& l : g.latch_next() )
  {
    info.max_level = std::max( info.max_level, info.level[l.index()] );
  }
  return info;
}

std::vector<bool> simulate( const aig& g, const std::vector<bool>& ci_values )
{
  if ( ci_values.size() != g.num_cis() )
  {
    throw std::invalid_argument( "assignment length does not match combinational input count" );
  }
  std::vector<bool> value( g.node_count(), false );
  for ( uint32_t i = 0; i < g.num_cis(); ++i )
  {
    value[1 + i] = ci_values[i];
  }
  for ( uint32_t i = g.first_and(); i < g.node_count(); ++i )
  {
    const auto& n = g.node( i );
    const bool a = value[n.fanin0.index()] != n.fanin0.complemented();
    const bool b = value[n.fanin1.index()] != n.fanin1.complemented();
    value[i] = a && b;
  }
  std::vector<bool> result;
  result.reserve( g.num_outputs() + g.num_latches() );
  for ( const auto& l : g.outputs() )
  {
    result.push_back( value[l.index()] != l.complemented() );
  }
  return result;
}

std::vector<uint64_t> simulate_words( const aig& g, const std::vector<uint64_t>& ci_words,
                                      size_t words_per_signal )
{
  std::vector<uint64_t> value( static_cast<size_t>( g.node_count() ) * words_per_signal, 0 );
  for ( uint32_t i = 0; i < g.num_cis(); ++i )
  {
    std::copy_n( ci_words.begin() + static_cast<size_t>( i ) * words_per_signal, words_per_signal,
                 value.begin() + static_cast<size_t>( 1 + i ) * words_per_signal );
  }
  for ( uint32_t i = g.first_and(); i < g.node_count(); ++i )
  {
    const auto& n = g.node( i );
    const uint64_t mask0 = n.fanin0.complemented() ? ~0ull : 0ull;
    const uint64_t mask1 = n.fanin1.complemented() ? ~0ull : 0ull;
    const size_t base = static_cast<size_t>( i ) * words_per_signal;
    const size_t base0 = static_cast<size_t>( n.fanin0.index() ) * words_per_signal;
    const size_t base1 = static_cast<size_t>( n.fanin1.index() ) * words_per_signal;
    for ( size_t w = 0; w < words_per_signal; ++w )
    {
      value[base + w] = ( value[base0 + w] ^ mask0 ) & ( value[base1 + w] ^ mask1 );
    }
  }
  return value;
}

size_t exhaustive_word_count( uint32_t num_vars )
{
  return num_vars <= 6 ? 1 : ( size_t( 1 ) << ( num_vars - 6 ) );
}

std::vector<uint64_t> exhaustive_ci_words( uint32_t num_vars )
{
  static constexpr uint64_t masks[6] = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull };
  const size_t words = exhaustive_word_count( num_vars );
  std::vector<uint64_t> ci( static_cast<size_t>( num_vars ) * words );
  for ( uint32_t v = 0; v < num_vars; ++v )
  {
    for ( size_t w = 0; w < words; ++w )
    {
      if ( v < 6 )
      {
        ci[v * words + w] = masks[v];
      }
      else
      {
        ci[v * words + w] = ( ( w >> ( v - 6 ) ) & 1 ) ? ~0ull : 0ull;
      }
    }
  }
  return ci;
}

namespace {

std::vector<bool> assignment_from_pattern( uint32_t num_vars, size_t pattern )
{
  std::vector<bool> a( num_vars );
  for ( uint32_t v = 0; v < num_vars; ++v )
  {
    a[v] = ( ( pattern >> v ) & 1 ) != 0;
  }
  return a;
}

} // namespace

equiv_result equivalent( const aig& a, const aig& b, uint32_t budget )
{
  if ( a.num_cis() != b.num_cis() || a.num_outputs() != b.num_outputs() )
  {
    throw std::invalid_argument( "equivalence check requires matching interfaces" );
  }
  const uint32_t n = a.num_cis();
  if ( n <= 16 )
  {
    const size_t words = exhaustive_word_count( n );
    const auto ci = exhaustive_ci_words( n );
    const auto va = simulate_words( a, ci, words );
    const auto vb = simulate_words( b, ci, words );
    const uint64_t valid = n >= 6 ? ~0ull : ( ( 1ull << ( 1u << n ) ) - 1 );
    for ( uint32_t o = 0; o < a.num_outputs(); ++o )
    {
      const auto la = a.outputs()[o];
      const auto lb = b.outputs()[o];
      const uint64_t ma = la.complemented() ? ~0ull : 0ull;
      const uint64_t mb = lb.complemented() ? ~0ull : 0ull;
      for ( size_t w = 0; w < words; ++w )
      {
        const uint64_t wa = va[la.index() * words + w] ^ ma;
        const uint64_t wb = vb[lb.index() * words + w] ^ mb;
        const uint64_t diff = ( wa ^ wb ) & valid;
        if ( diff != 0 )
        {
          const size_t pattern = w * 64 + static_cast<size_t>( __builtin_ctzll( diff ) );
          return { equiv_verdict::counterexample, assignment_from_pattern( n, pattern ) };
        }
      }
    }
    return { equiv_verdict::proven_equivalent, {} };
  }

  // large interface: structural check plus random vectors; the verdict can
  // only be counterexample or undecided here
  if ( structurally_equal( strash( a ), strash( b ) ) )
  {
    return { equiv_verdict::undecided, {} };
  }
  std::mt19937_64 rng( 0x5eedC0DEull );
  const size_t words = ( budget + 63 ) / 64;
  std::vector<uint64_t> ci( static_cast<size_t>( n ) * words );
  for ( auto& w : ci )
  {
    w = rng();
  }
  const auto va = simulate_words( a, ci, words );
  const auto vb = simulate_words( b, ci, words );
  for ( uint32_t o = 0; o < a.num_outputs(); ++o )
  {
    const auto la = a.outputs()[o];
    const auto lb = b.outputs()[o];
    const uint64_t ma = la.complemented() ? ~0ull : 0ull;
    const uint64_t mb = lb.complemented() ? ~0ull : 0ull;
    for ( size_t w = 0; w < words; ++w )
    {
      const uint64_t wa = va[la.index() * words + w] ^ ma;
      const uint64_t wb = vb[lb.index() * words + w] ^ mb;
      if ( uint64_t diff = wa ^ wb; diff != 0 )
      {
        const int bit = __builtin_ctzll( diff );
        std::vector<bool> assignment( n );
        for ( uint32_t v = 0; v < n; ++v )
        {
          assignment[v] = ( ( ci[v * words + w] >> bit ) & 1 ) != 0;
        }
        return { equiv_verdict::counterexample, std::move( assignment ) };
      }
    }
  }
  return { equiv_verdict::undecided, {} };
}

aig_stats extract_stats( const aig& g )
{
  aig_stats s;
  s.num_pi = g.num_inputs();
  s.num_po = g.num_outputs();
  s.num_nodes = g.num_ands();
  s.num_latches = g.num_latches();
  const uint32_t output_edges = g.num_outputs() + g.num_latches();
  s.num_edges = 2 * g.num_ands() + output_edges;
  s.num_levels = levels( g ).max_level;

  const uint32_t objects = g.num_ands() + g.num_inputs();
  s.pct_ands = objects == 0 ? 0.0 : static_cast<double>( g.num_ands() ) / objects;

  uint32_t complemented = 0;
  for ( const auto& n : g.and_nodes() )
  {
    complemented += n.fanin0.complemented() ? 1 : 0;
    complemented += n.fanin1.complemented() ? 1 : 0;
  }
  for ( const auto& l : g.outputs() )
  {
    complemented += l.complemented() ? 1 : 0;
  }
  for ( const auto& l : g.latch_next() )
  {
    complemented += l.complemented() ? 1 : 0;
  }
  s.pct_nots = s.num_edges == 0 ? 0.0 : static_cast<double>( complemented ) / s.num_edges;
  return s;
}

void require_combinational( const aig& g )
{
  if ( g.num_latches() != 0 )
  {
    throw aig_error( "sequential designs are not supported here (latches present)" );
  }
}

} // namespace aigopt
