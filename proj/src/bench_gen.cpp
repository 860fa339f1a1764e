#include "aigopt/bench_gen.hpp"

namespace aigopt {

namespace {

std::vector<literal> add_inputs( aig_builder& b, uint32_t n )
{
  std::vector<literal> v;
  v.reserve( n );
  for ( uint32_t i = 0; i < n; ++i )
  {
    v.push_back( b.add_ci() );
  }
  return v;
}

// full adder: returns (sum, carry)
std::pair<literal, literal> full_adder( aig_builder& b, literal x, literal y, literal cin )
{
  const literal t = b.add_xor( x, y );
  const literal sum = b.add_xor( t, cin );
  const literal cout = b.add_mux( t, cin, y ); // x == y when t is 0
  return { sum, cout };
}

// ripple addition of b_bits into acc starting at bit `shift`
void accumulate( aig_builder& b, std::vector<literal>& acc, const std::vector<literal>& addend,
                 uint32_t shift )
{
  literal carry = lit_false;
  for ( size_t i = 0; i < addend.size(); ++i )
  {
    const size_t pos = shift + i;
    while ( acc.size() <= pos )
    {
      acc.push_back( lit_false );
    }
    auto [sum, cout] = full_adder( b, acc[pos], addend[i], carry );
    acc[pos] = sum;
    carry = cout;
  }
  size_t pos = shift + addend.size();
  while ( !( carry == lit_false ) )
  {
    while ( acc.size() <= pos )
    {
      acc.push_back( lit_false );
    }
    auto [sum, cout] = full_adder( b, acc[pos], carry, lit_false );
    acc[pos] = sum;
    carry = cout;
    ++pos;
  }
}

aig multiply( uint32_t bits, bool square )
{
  aig_builder b;
  const auto a = add_inputs( b, bits );
  const auto c = square ? a : add_inputs( b, bits );
  std::vector<literal> acc;
  for ( uint32_t i = 0; i < bits; ++i )
  {
    std::vector<literal> row;
    row.reserve( bits );
    for ( uint32_t j = 0; j < bits; ++j )
    {
      row.push_back( b.add_and( a[j], c[i] ) );
    }
    accumulate( b, acc, row, i );
  }
  acc.resize( 2 * bits, lit_false );
  return b.build( acc );
}

} // namespace

aig make_adder( uint32_t bits )
{
  // parallel-prefix (Kogge-Stone) form: considerably more nodes than a
  // ripple adder, which leaves the optimization passes room to work
  aig_builder b;
  const auto a = add_inputs( b, bits );
  const auto c = add_inputs( b, bits );
  std::vector<literal> gen( bits ), prop( bits ), carry_p( bits );
  for ( uint32_t i = 0; i < bits; ++i )
  {
    gen[i] = b.add_and( a[i], c[i] );
    prop[i] = b.add_xor( a[i], c[i] );
  }
  carry_p = prop;
  std::vector<literal> g_pfx = gen, p_pfx = carry_p;
  for ( uint32_t d = 1; d < bits; d *= 2 )
  {
    std::vector<literal> g_next = g_pfx, p_next = p_pfx;
    for ( uint32_t i = bits; i-- > d; )
    {
      g_next[i] = b.add_or( g_pfx[i], b.add_and( p_pfx[i], g_pfx[i - d] ) );
      p_next[i] = b.add_and( p_pfx[i], p_pfx[i - d] );
    }
    g_pfx = std::move( g_next );
    p_pfx = std::move( p_next );
  }
  std::vector<literal> outputs;
  outputs.push_back( prop[0] );
  for ( uint32_t i = 1; i < bits; ++i )
  {
    outputs.push_back( b.add_xor( prop[i], g_pfx[i - 1] ) );
  }
  outputs.push_back( g_pfx[bits - 1] );
  return b.build( outputs );
}

aig make_multiplier( uint32_t bits )
{
  return multiply( bits, false );
}

aig make_square( uint32_t bits )
{
  return multiply( bits, true );
}

aig make_barrel_shifter( uint32_t bits )
{
  // decoded shift-amount form: every output is an AND-OR over one-hot
  // select terms, much larger than the layered mux tree
  uint32_t log2n = 0;
  while ( ( 1u << log2n ) < bits )
  {
    ++log2n;
  }
  aig_builder b;
  const auto value = add_inputs( b, bits );
  const auto amount = add_inputs( b, log2n );

  std::vector<literal> onehot( bits );
  for ( uint32_t s = 0; s < bits; ++s )
  {
    std::vector<literal> lits;
    for ( uint32_t k = 0; k < log2n; ++k )
    {
      lits.push_back( amount[k] ^ ( ( ( s >> k ) & 1u ) == 0 ) );
    }
    literal acc = lit_true;
    for ( const auto l : lits )
    {
      acc = b.add_and( acc, l );
    }
    onehot[s] = acc;
  }
  std::vector<literal> outputs( bits );
  for ( uint32_t i = 0; i < bits; ++i )
  {
    literal acc = lit_false;
    for ( uint32_t s = 0; s < bits; ++s )
    {
      acc = b.add_or( acc, b.add_and( onehot[s], value[( i + bits - s ) % bits] ) );
    }
    outputs[i] = acc;
  }
  return b.build( outputs );
}

aig make_max( uint32_t bits )
{
  // flat comparator: one product term per bit position with its own
  // equality tree, quadratic in the width
  aig_builder b;
  const auto x = add_inputs( b, bits );
  const auto y = add_inputs( b, bits );
  std::vector<literal> eq( bits );
  for ( uint32_t i = 0; i < bits; ++i )
  {
    eq[i] = !b.add_xor( x[i], y[i] );
  }
  std::vector<literal> terms;
  for ( uint32_t i = 0; i < bits; ++i )
  {
    literal term = b.add_and( x[i], !y[i] );
    if ( i % 2 == 0 )
    {
      for ( uint32_t j = i + 1; j < bits; ++j ) // linear chain
      {
        term = b.add_and( term, eq[j] );
      }
    }
    else
    {
      std::vector<literal> layer{ term };
      for ( uint32_t j = i + 1; j < bits; ++j )
      {
        layer.push_back( eq[j] );
      }
      while ( layer.size() > 1 ) // balanced tree, structurally unlike the chains
      {
        std::vector<literal> next;
        for ( size_t k = 0; k + 1 < layer.size(); k += 2 )
        {
          next.push_back( b.add_and( layer[k], layer[k + 1] ) );
        }
        if ( layer.size() % 2 )
        {
          next.push_back( layer.back() );
        }
        layer = std::move( next );
      }
      term = layer[0];
    }
    terms.push_back( term );
  }
  literal x_greater = lit_false;
  for ( const auto t : terms )
  {
    x_greater = b.add_or( x_greater, t );
  }
  std::vector<literal> outputs;
  outputs.reserve( bits );
  for ( uint32_t i = 0; i < bits; ++i )
  {
    outputs.push_back( b.add_mux( x_greater, x[i], y[i] ) );
  }
  return b.build( outputs );
}

aig make_divider( uint32_t bits )
{
  aig_builder b;
  const auto dividend = add_inputs( b, bits );
  const auto divisor = add_inputs( b, bits );

  // restoring division, MSB first; remainder has bits+1 working bits
  std::vector<literal> remainder( bits + 1, lit_false );
  std::vector<literal> quotient( bits, lit_false );
  for ( uint32_t step = 0; step < bits; ++step )
  {
    // shift in the next dividend bit
    for ( uint32_t j = bits; j > 0; --j )
    {
      remainder[j] = remainder[j - 1];
    }
    remainder[0] = dividend[bits - 1 - step];

    // rem - divisor via two's complement addition
    std::vector<literal> diff( bits + 1 );
    literal carry = lit_true;
    for ( uint32_t j = 0; j <= bits; ++j )
    {
      const literal d = j < bits ? !divisor[j] : lit_true; // sign-extended complement
      auto [sum, cout] = full_adder( b, remainder[j], d, carry );
      diff[j] = sum;
      carry = cout;
    }
    const literal not_borrow = carry; // carry out means rem >= divisor
    quotient[bits - 1 - step] = not_borrow;
    for ( uint32_t j = 0; j <= bits; ++j )
    {
      remainder[j] = b.add_mux( not_borrow, diff[j], remainder[j] );
    }
  }

  std::vector<literal> outputs = quotient;
  for ( uint32_t j = 0; j < bits; ++j )
  {
    outputs.push_back( remainder[j] );
  }
  return b.build( outputs );
}

std::vector<bench_spec> desk_benchmarks()
{
  std::vector<bench_spec> suite;
  suite.push_back( { "adder8", make_adder( 8 ) } );
  suite.push_back( { "bar8", make_barrel_shifter( 8 ) } );
  suite.push_back( { "div8", make_divider( 8 ) } );
  suite.push_back( { "max8", make_max( 8 ) } );
  suite.push_back( { "mul8", make_multiplier( 8 ) } );
  suite.push_back( { "square8", make_square( 8 ) } );
  return suite;
}

} // namespace aigopt
