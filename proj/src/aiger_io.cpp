#include "aigopt/aiger_io.hpp"

#include <fstream>
#include <sstream>

namespace aigopt {

namespace {

class cursor {
public:
  explicit cursor( std::string_view data ) : data_( data ) {}

  size_t offset() const { return pos_; }
  bool eof() const { return pos_ >= data_.size(); }

  [[noreturn]] void fail( const std::string& what ) const { throw aiger_parse_error( what, pos_ ); }

  char peek() const
  {
    if ( eof() )
    {
      fail( "unexpected end of file" );
    }
    return data_[pos_];
  }

  char get()
  {
    const char c = peek();
    ++pos_;
    return c;
  }

  void expect( char c )
  {
    if ( peek() != c )
    {
      fail( std::string( "expected '" ) + c + "'" );
    }
    ++pos_;
  }

  void skip_spaces()
  {
    while ( !eof() && ( data_[pos_] == ' ' || data_[pos_] == '\t' ) )
    {
      ++pos_;
    }
  }

  void expect_newline()
  {
    skip_spaces();
    if ( eof() )
    {
      return; // tolerate a missing final newline
    }
    if ( data_[pos_] == '\r' )
    {
      ++pos_;
    }
    expect( '\n' );
  }

  bool at_line_end()
  {
    skip_spaces();
    return eof() || data_[pos_] == '\n' || data_[pos_] == '\r';
  }

  uint64_t number()
  {
    skip_spaces();
    if ( eof() || data_[pos_] < '0' || data_[pos_] > '9' )
    {
      fail( "expected a number" );
    }
    uint64_t value = 0;
    while ( !eof() && data_[pos_] >= '0' && data_[pos_] <= '9' )
    {
      value = value * 10 + static_cast<uint64_t>( data_[pos_] - '0' );
      if ( value > 0xFFFFFFFFull )
      {
        fail( "number out of range" );
      }
      ++pos_;
    }
    return value;
  }

  uint8_t byte()
  {
    if ( eof() )
    {
      fail( "unexpected end of binary section" );
    }
    return static_cast<uint8_t>( data_[pos_++] );
  }

private:
  std::string_view data_;
  size_t pos_ = 0;
};

struct header {
  bool binary;
  uint32_t m, i, l, o, a;
};

header parse_header( cursor& in )
{
  header h{};
  std::string magic;
  while ( !in.eof() && in.peek() != ' ' )
  {
    magic += in.get();
  }
  if ( magic == "aig" )
  {
    h.binary = true;
  }
  else if ( magic == "aag" )
  {
    h.binary = false;
  }
  else
  {
    in.fail( "bad magic, expected 'aig' or 'aag'" );
  }
  h.m = static_cast<uint32_t>( in.number() );
  h.i = static_cast<uint32_t>( in.number() );
  h.l = static_cast<uint32_t>( in.number() );
  h.o = static_cast<uint32_t>( in.number() );
  h.a = static_cast<uint32_t>( in.number() );
  if ( !in.at_line_end() )
  {
    in.fail( "trailing tokens in header" );
  }
  in.expect_newline();
  if ( static_cast<uint64_t>( h.i ) + h.l + h.a > h.m )
  {
    in.fail( "header M smaller than I + L + A" );
  }
  return h;
}

uint32_t decode_delta( cursor& in )
{
  uint32_t value = 0;
  unsigned shift = 0;
  while ( true )
  {
    const uint8_t b = in.byte();
    if ( shift == 28 && ( b & 0x7F ) > 0x0F )
    {
      in.fail( "delta encoding overflows 32 bits" );
    }
    value |= static_cast<uint32_t>( b & 0x7F ) << shift;
    if ( ( b & 0x80 ) == 0 )
    {
      return value;
    }
    shift += 7;
  }
}

void encode_delta( std::string& out, uint32_t delta )
{
  while ( delta >= 0x80 )
  {
    out += static_cast<char>( ( delta & 0x7F ) | 0x80 );
    delta >>= 7;
  }
  out += static_cast<char>( delta );
}

} // namespace

aig parse_aiger( std::string_view data, bool require_combinational_flag )
{
  cursor in( data );
  const header h = parse_header( in );

  if ( require_combinational_flag && h.l > 0 )
  {
    throw aig_error( "design has latches but a combinational design is required" );
  }

  // var_map: AIGER variable -> node index (0 stays 0)
  std::vector<uint32_t> var_map( h.m + 1, UINT32_MAX );
  var_map[0] = 0;

  auto map_rhs = [&]( uint64_t lit, cursor& c ) {
    const uint32_t var = static_cast<uint32_t>( lit >> 1 );
    if ( var > h.m || var_map[var] == UINT32_MAX )
    {
      c.fail( "literal " + std::to_string( lit ) + " references an undefined variable" );
    }
    return literal( var_map[var], ( lit & 1 ) != 0 );
  };

  std::vector<uint64_t> output_lits( h.o );
  std::vector<uint64_t> latch_lits( h.l );
  std::vector<aig_node> ands;
  ands.reserve( h.a );

  if ( h.binary )
  {
    // inputs are implicit: variables 1..I
    for ( uint32_t v = 1; v <= h.i + h.l; ++v )
    {
      if ( v > h.m )
      {
        in.fail( "binary file needs contiguous input/latch variables" );
      }
      var_map[v] = v;
    }
    for ( uint32_t k = 0; k < h.l; ++k )
    {
      latch_lits[k] = in.number();
      if ( !in.at_line_end() )
      {
        const uint64_t reset = in.number();
        if ( reset != 0 )
        {
          in.fail( "nonzero latch reset values are not supported" );
        }
      }
      in.expect_newline();
    }
    for ( uint32_t k = 0; k < h.o; ++k )
    {
      output_lits[k] = in.number();
      in.expect_newline();
    }
    for ( uint32_t k = 0; k < h.a; ++k )
    {
      const uint32_t var = h.i + h.l + k + 1;
      const uint64_t lhs = 2ull * var;
      const uint32_t delta0 = decode_delta( in );
      if ( delta0 == 0 || delta0 > lhs )
      {
        in.fail( "invalid delta for AND " + std::to_string( lhs ) );
      }
      const uint64_t rhs0 = lhs - delta0;
      const uint32_t delta1 = decode_delta( in );
      if ( delta1 > rhs0 )
      {
        in.fail( "invalid second delta for AND " + std::to_string( lhs ) );
      }
      const uint64_t rhs1 = rhs0 - delta1;
      var_map[var] = var;
      // the binary encoding forces rhs0 >= rhs1; store ascending
      ands.push_back( { map_rhs( rhs1, in ), map_rhs( rhs0, in ) } );
    }
  }
  else
  {
    for ( uint32_t k = 0; k < h.i; ++k )
    {
      const uint64_t lit = in.number();
      in.expect_newline();
      if ( ( lit & 1 ) != 0 || lit == 0 || ( lit >> 1 ) > h.m )
      {
        in.fail( "invalid input literal " + std::to_string( lit ) );
      }
      if ( var_map[lit >> 1] != UINT32_MAX )
      {
        in.fail( "variable defined twice" );
      }
      var_map[lit >> 1] = 1 + k;
    }
    for ( uint32_t k = 0; k < h.l; ++k )
    {
      const uint64_t lit = in.number();
      const uint64_t next = in.number();
      if ( !in.at_line_end() )
      {
        const uint64_t reset = in.number();
        if ( reset != 0 )
        {
          in.fail( "nonzero latch reset values are not supported" );
        }
      }
      in.expect_newline();
      if ( ( lit & 1 ) != 0 || lit == 0 || ( lit >> 1 ) > h.m )
      {
        in.fail( "invalid latch literal " + std::to_string( lit ) );
      }
      if ( var_map[lit >> 1] != UINT32_MAX )
      {
        in.fail( "variable defined twice" );
      }
      var_map[lit >> 1] = 1 + h.i + k;
      latch_lits[k] = next;
    }
    for ( uint32_t k = 0; k < h.o; ++k )
    {
      output_lits[k] = in.number();
      in.expect_newline();
    }
    for ( uint32_t k = 0; k < h.a; ++k )
    {
      const uint64_t lhs = in.number();
      const uint64_t rhs0 = in.number();
      const uint64_t rhs1 = in.number();
      in.expect_newline();
      if ( ( lhs & 1 ) != 0 || lhs == 0 || ( lhs >> 1 ) > h.m )
      {
        in.fail( "invalid AND literal " + std::to_string( lhs ) );
      }
      if ( var_map[lhs >> 1] != UINT32_MAX )
      {
        in.fail( "variable defined twice" );
      }
      // fanins must already be defined: file order is node order
      const literal f0 = map_rhs( rhs0, in );
      const literal f1 = map_rhs( rhs1, in );
      var_map[lhs >> 1] = 1 + h.i + h.l + k;
      ands.push_back( { f0, f1 } );
    }
  }

  // anything after the defining sections (symbols, comments) is ignored

  std::vector<literal> outputs;
  outputs.reserve( h.o );
  for ( const auto lit : output_lits )
  {
    outputs.push_back( map_rhs( lit, in ) );
  }
  std::vector<literal> latch_next;
  latch_next.reserve( h.l );
  for ( const auto lit : latch_lits )
  {
    latch_next.push_back( map_rhs( lit, in ) );
  }
  return aig::from_parts( h.i, h.l, std::move( ands ), std::move( latch_next ), std::move( outputs ) );
}

std::string write_aiger( const aig& g, bool ascii )
{
  std::string out;
  const uint32_t m = g.num_cis() + g.num_ands();
  const auto head = std::string( ascii ? "aag" : "aig" ) + " " + std::to_string( m ) + " " +
                    std::to_string( g.num_inputs() ) + " " + std::to_string( g.num_latches() ) + " " +
                    std::to_string( g.num_outputs() ) + " " + std::to_string( g.num_ands() ) + "\n";
  out += head;

  auto to_aiger_lit = []( literal l ) { return 2ull * l.index() + ( l.complemented() ? 1 : 0 ); };

  if ( ascii )
  {
    for ( uint32_t k = 0; k < g.num_inputs(); ++k )
    {
      out += std::to_string( 2 * ( 1 + k ) ) + "\n";
    }
    for ( uint32_t k = 0; k < g.num_latches(); ++k )
    {
      out += std::to_string( 2 * ( 1 + g.num_inputs() + k ) ) + " " +
             std::to_string( to_aiger_lit( g.latch_next()[k] ) ) + "\n";
    }
    for ( const auto& l : g.outputs() )
    {
      out += std::to_string( to_aiger_lit( l ) ) + "\n";
    }
    for ( uint32_t i = g.first_and(); i < g.node_count(); ++i )
    {
      const auto& n = g.node( i );
      out += std::to_string( 2ull * i ) + " " + std::to_string( to_aiger_lit( n.fanin0 ) ) + " " +
             std::to_string( to_aiger_lit( n.fanin1 ) ) + "\n";
    }
  }
  else
  {
    for ( const auto& l : g.latch_next() )
    {
      out += std::to_string( to_aiger_lit( l ) ) + "\n";
    }
    for ( const auto& l : g.outputs() )
    {
      out += std::to_string( to_aiger_lit( l ) ) + "\n";
    }
    for ( uint32_t i = g.first_and(); i < g.node_count(); ++i )
    {
      const auto& n = g.node( i );
      const uint64_t lhs = 2ull * i;
      uint64_t rhs0 = to_aiger_lit( n.fanin0 );
      uint64_t rhs1 = to_aiger_lit( n.fanin1 );
      if ( rhs0 < rhs1 )
      {
        std::swap( rhs0, rhs1 );
      }
      encode_delta( out, static_cast<uint32_t>( lhs - rhs0 ) );
      encode_delta( out, static_cast<uint32_t>( rhs0 - rhs1 ) );
    }
  }
  return out;
}

aig read_aiger_file( const std::string& path, bool require_combinational_flag )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw aig_error( "cannot open '" + path + "'" );
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string data = buffer.str();
  return parse_aiger( data, require_combinational_flag );
}

void write_aiger_file( const aig& g, const std::string& path, bool ascii )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
  {
    throw aig_error( "cannot open '" + path + "' for writing" );
  }
  const auto data = write_aiger( g, ascii );
  out.write( data.data(), static_cast<std::streamsize>( data.size() ) );
}

} // namespace aigopt
