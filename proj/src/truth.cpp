#include "aigopt/truth.hpp"

#include <algorithm>

namespace aigopt {

namespace {

const std::array<std::array<uint8_t, 4>, 24>& all_perms()
{
  static const auto perms = [] {
    std::array<std::array<uint8_t, 4>, 24> out{};
    std::array<uint8_t, 4> p = { 0, 1, 2, 3 };
    size_t k = 0;
    do
    {
      out[k++] = p;
    } while ( std::next_permutation( p.begin(), p.end() ) );
    return out;
  }();
  return perms;
}

// per-permutation minterm gather tables: sigma[m] is the source minterm
const std::array<std::array<uint8_t, 16>, 24>& perm_gather()
{
  static const auto tables = [] {
    std::array<std::array<uint8_t, 16>, 24> out{};
    const auto& perms = all_perms();
    for ( size_t pi = 0; pi < 24; ++pi )
    {
      for ( uint32_t m = 0; m < 16; ++m )
      {
        uint32_t idx = 0;
        for ( uint32_t j = 0; j < 4; ++j )
        {
          idx |= ( ( m >> perms[pi][j] ) & 1u ) << j;
        }
        out[pi][m] = static_cast<uint8_t>( idx );
      }
    }
    return out;
  }();
  return tables;
}

inline uint16_t flip_var( uint16_t t, uint32_t v )
{
  const uint16_t mask = tt4_vars[v];
  const uint32_t s = 1u << v;
  return static_cast<uint16_t>( ( ( t & mask ) >> s ) | ( ( t & static_cast<uint16_t>( ~mask ) ) << s ) );
}

} // namespace

uint16_t tt4_transform( uint16_t f, const std::array<uint8_t, 4>& perm, uint8_t cmask, bool out )
{
  uint16_t g = 0;
  for ( uint32_t m = 0; m < 16; ++m )
  {
    uint32_t idx = 0;
    for ( uint32_t j = 0; j < 4; ++j )
    {
      const uint32_t bit = ( ( m >> perm[j] ) & 1u ) ^ ( ( cmask >> j ) & 1u );
      idx |= bit << j;
    }
    if ( ( ( f >> idx ) & 1u ) != ( out ? 1u : 0u ) )
    {
      g |= static_cast<uint16_t>( 1u << m );
    }
  }
  return g;
}

uint16_t tt4_extend( uint16_t f, uint32_t from_vars )
{
  uint32_t bits = 1u << from_vars;
  uint16_t t = static_cast<uint16_t>( f & ( bits >= 16 ? 0xFFFFu : ( 1u << bits ) - 1 ) );
  while ( bits < 16 )
  {
    t = static_cast<uint16_t>( t | ( t << bits ) );
    bits *= 2;
  }
  return t;
}

npn_canon npn_canonicalize( uint16_t f )
{
  const auto& perms = all_perms();
  const auto& gather = perm_gather();

  uint16_t best = 0xFFFF;
  size_t best_perm = 0;
  uint8_t best_flips = 0;
  bool best_out = false;
  bool have_best = false;

  for ( size_t pi = 0; pi < 24; ++pi )
  {
    uint16_t permuted = 0;
    for ( uint32_t m = 0; m < 16; ++m )
    {
      if ( ( f >> gather[pi][m] ) & 1u )
      {
        permuted |= static_cast<uint16_t>( 1u << m );
      }
    }
    // walk input-complement masks in Gray-code order: one variable flip per step
    uint16_t t = permuted;
    uint8_t gray = 0;
    for ( uint32_t k = 0;; ++k )
    {
      const uint16_t tn = static_cast<uint16_t>( ~t );
      if ( !have_best || t < best )
      {
        best = t;
        best_perm = pi;
        best_flips = gray;
        best_out = false;
        have_best = true;
      }
      if ( tn < best )
      {
        best = tn;
        best_perm = pi;
        best_flips = gray;
        best_out = true;
      }
      if ( k == 15 )
      {
        break;
      }
      const uint32_t v = static_cast<uint32_t>( __builtin_ctz( k + 1 ) );
      t = flip_var( t, v );
      gray ^= static_cast<uint8_t>( 1u << v );
    }
  }

  npn_canon result;
  result.canonical = best;
  result.transform.perm = perms[best_perm];
  uint8_t cmask = 0;
  for ( uint32_t j = 0; j < 4; ++j )
  {
    cmask |= static_cast<uint8_t>( ( ( best_flips >> perms[best_perm][j] ) & 1u ) << j );
  }
  result.transform.cmask = cmask;
  result.transform.output_complement = best_out;
  return result;
}

npn_binding npn_bind( const npn_transform& t )
{
  npn_binding b;
  for ( uint32_t i = 0; i < 4; ++i )
  {
    // q[i]: the position j with perm[j] == i
    uint32_t j = 0;
    while ( t.perm[j] != i )
    {
      ++j;
    }
    b.input_source[i] = static_cast<uint8_t>( j );
    b.input_complement[i] = ( ( t.cmask >> j ) & 1u ) != 0;
  }
  b.output_complement = t.output_complement;
  return b;
}

// ---------------------------------------------------------------------------

namespace {

constexpr uint64_t var_masks6[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull };

} // namespace

ttd::ttd( uint32_t num_vars )
    : num_vars_( num_vars ), words_( num_vars <= 6 ? 1 : size_t( 1 ) << ( num_vars - 6 ), 0 )
{
}

ttd ttd::constant( uint32_t num_vars, bool value )
{
  ttd t( num_vars );
  if ( value )
  {
    std::fill( t.words_.begin(), t.words_.end(), ~0ull );
  }
  return t;
}

ttd ttd::var( uint32_t num_vars, uint32_t v )
{
  ttd t( num_vars );
  if ( v < 6 )
  {
    std::fill( t.words_.begin(), t.words_.end(), var_masks6[v] );
  }
  else
  {
    for ( size_t w = 0; w < t.words_.size(); ++w )
    {
      t.words_[w] = ( ( w >> ( v - 6 ) ) & 1 ) ? ~0ull : 0ull;
    }
  }
  return t;
}

bool ttd::is_zero() const
{
  return std::all_of( words_.begin(), words_.end(), []( uint64_t w ) { return w == 0; } );
}

bool ttd::is_ones() const
{
  return std::all_of( words_.begin(), words_.end(), []( uint64_t w ) { return w == ~0ull; } );
}

bool ttd::get_bit( size_t minterm ) const
{
  return ( ( words_[minterm / 64] >> ( minterm % 64 ) ) & 1 ) != 0;
}

ttd ttd::operator&( const ttd& o ) const
{
  ttd r( num_vars_ );
  for ( size_t w = 0; w < words_.size(); ++w )
  {
    r.words_[w] = words_[w] & o.words_[w];
  }
  return r;
}

ttd ttd::operator|( const ttd& o ) const
{
  ttd r( num_vars_ );
  for ( size_t w = 0; w < words_.size(); ++w )
  {
    r.words_[w] = words_[w] | o.words_[w];
  }
  return r;
}

ttd ttd::operator^( const ttd& o ) const
{
  ttd r( num_vars_ );
  for ( size_t w = 0; w < words_.size(); ++w )
  {
    r.words_[w] = words_[w] ^ o.words_[w];
  }
  return r;
}

ttd ttd::operator~() const
{
  ttd r( num_vars_ );
  for ( size_t w = 0; w < words_.size(); ++w )
  {
    r.words_[w] = ~words_[w];
  }
  return r;
}

ttd ttd::cofactor0( uint32_t v ) const
{
  ttd r( num_vars_ );
  if ( v < 6 )
  {
    const uint64_t mask = ~var_masks6[v];
    const uint32_t s = 1u << v;
    for ( size_t w = 0; w < words_.size(); ++w )
    {
      const uint64_t low = words_[w] & mask;
      r.words_[w] = low | ( low << s );
    }
  }
  else
  {
    const size_t block = size_t( 1 ) << ( v - 6 );
    for ( size_t w = 0; w < words_.size(); ++w )
    {
      r.words_[w] = words_[( w & ~block )];
    }
  }
  return r;
}

ttd ttd::cofactor1( uint32_t v ) const
{
  ttd r( num_vars_ );
  if ( v < 6 )
  {
    const uint64_t mask = var_masks6[v];
    const uint32_t s = 1u << v;
    for ( size_t w = 0; w < words_.size(); ++w )
    {
      const uint64_t high = words_[w] & mask;
      r.words_[w] = high | ( high >> s );
    }
  }
  else
  {
    const size_t block = size_t( 1 ) << ( v - 6 );
    for ( size_t w = 0; w < words_.size(); ++w )
    {
      r.words_[w] = words_[( w | block )];
    }
  }
  return r;
}

bool ttd::depends_on( uint32_t v ) const
{
  return !( cofactor0( v ) == cofactor1( v ) );
}

ttd cover_function( const std::vector<cube>& cover, uint32_t num_vars )
{
  ttd f = ttd::constant( num_vars, false );
  for ( const auto& c : cover )
  {
    ttd term = ttd::constant( num_vars, true );
    for ( uint32_t v = 0; v < num_vars; ++v )
    {
      if ( c.pos & ( 1u << v ) )
      {
        term = term & ttd::var( num_vars, v );
      }
      else if ( c.neg & ( 1u << v ) )
      {
        term = term & ~ttd::var( num_vars, v );
      }
    }
    f = f | term;
  }
  return f;
}

namespace {

struct isop_context {
  uint32_t max_cubes;
  bool overflow = false;
};

// Minato-Morreale: cover P with L <= func(P) <= U; returns func(P)
ttd isop_rec( const ttd& lower, const ttd& upper, uint32_t num_vars, std::vector<cube>& cover,
              isop_context& ctx )
{
  if ( ctx.overflow || lower.is_zero() )
  {
    return ttd::constant( lower.num_vars(), false );
  }
  if ( upper.is_ones() )
  {
    if ( cover.size() >= ctx.max_cubes )
    {
      ctx.overflow = true;
      return ttd::constant( lower.num_vars(), false );
    }
    cover.push_back( {} );
    return ttd::constant( lower.num_vars(), true );
  }

  uint32_t v = num_vars;
  while ( v-- > 0 )
  {
    if ( lower.depends_on( v ) || upper.depends_on( v ) )
    {
      break;
    }
  }
  // lower nonzero and upper not tautology imply some dependent variable

  const ttd l0 = lower.cofactor0( v );
  const ttd l1 = lower.cofactor1( v );
  const ttd u0 = upper.cofactor0( v );
  const ttd u1 = upper.cofactor1( v );

  const size_t first0 = cover.size();
  const ttd f0 = isop_rec( l0 & ~u1, u0, v, cover, ctx );
  const size_t first1 = cover.size();
  const ttd f1 = isop_rec( l1 & ~u0, u1, v, cover, ctx );
  if ( ctx.overflow )
  {
    return f0;
  }
  for ( size_t k = first0; k < first1; ++k )
  {
    cover[k].neg |= 1u << v;
  }
  for ( size_t k = first1; k < cover.size(); ++k )
  {
    cover[k].pos |= 1u << v;
  }

  const ttd lr = ( l0 & ~f0 ) | ( l1 & ~f1 );
  const ttd fr = isop_rec( lr, u0 & u1, v, cover, ctx );
  if ( ctx.overflow )
  {
    return fr;
  }

  const ttd xv = ttd::var( lower.num_vars(), v );
  return ( ~xv & f0 ) | ( xv & f1 ) | fr;
}

} // namespace

std::optional<std::vector<cube>> isop( const ttd& f, uint32_t max_cubes )
{
  std::vector<cube> cover;
  isop_context ctx{ max_cubes };
  isop_rec( f, f, f.num_vars(), cover, ctx );
  if ( ctx.overflow )
  {
    return std::nullopt;
  }
  return cover;
}

} // namespace aigopt
