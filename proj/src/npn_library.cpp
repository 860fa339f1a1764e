#include "aigopt/npn_library.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aigopt {

namespace {

// enumeration entry: how a function was first reached
struct fentry {
  enum kind_t : uint8_t { unseen, terminal, and_node, complement } kind = unseen;
  uint8_t cost = 0;
  uint16_t a = 0; // child function keys
  uint16_t b = 0;
  uint8_t pol = 0; // bit0: complement a, bit1: complement b
};

uint16_t build_template_rec( uint16_t f, const std::vector<fentry>& table, npn_template& out,
                             std::vector<int>& built )
{
  // returns a template literal computing f
  const auto& e = table[f];
  switch ( e.kind )
  {
  case fentry::terminal:
  {
    if ( f == 0x0000 )
    {
      return 0; // constant false
    }
    for ( uint32_t v = 0; v < 4; ++v )
    {
      if ( f == tt4_vars[v] )
      {
        return static_cast<uint16_t>( 2 * ( 1 + v ) );
      }
    }
    throw std::logic_error( "corrupt enumeration table" );
  }
  case fentry::complement:
    return static_cast<uint16_t>( build_template_rec( e.a, table, out, built ) ^ 1 );
  case fentry::and_node:
  {
    if ( built[f] >= 0 )
    {
      return static_cast<uint16_t>( 2 * ( 5 + built[f] ) );
    }
    const uint16_t la = static_cast<uint16_t>( build_template_rec( e.a, table, out, built ) ^ ( e.pol & 1 ) );
    const uint16_t lb = static_cast<uint16_t>( build_template_rec( e.b, table, out, built ) ^ ( ( e.pol >> 1 ) & 1 ) );
    out.nodes.push_back( { la, lb } );
    built[f] = static_cast<int>( out.nodes.size() ) - 1;
    return static_cast<uint16_t>( 2 * ( 5 + built[f] ) );
  }
  default:
    throw std::logic_error( "function was never enumerated" );
  }
}

npn_template template_from_entry( uint16_t f, const std::vector<fentry>& table )
{
  npn_template t;
  std::vector<int> built( 65536, -1 );
  t.output = build_template_rec( f, table, t, built );
  return t;
}

// fallback: two-level structure from the irredundant sum-of-products
npn_template template_from_isop( uint16_t f )
{
  ttd func( 4 );
  func.words()[0] = 0;
  for ( uint32_t m = 0; m < 16; ++m )
  {
    if ( ( f >> m ) & 1u )
    {
      for ( uint32_t rep = m; rep < 64; rep += 16 )
      {
        func.words()[0] |= 1ull << rep;
      }
    }
  }
  const auto cover = isop( func );
  npn_template t;
  auto make = [&t]( uint16_t a, uint16_t b ) {
    t.nodes.push_back( { a, b } );
    return static_cast<uint16_t>( 2 * ( 5 + t.nodes.size() - 1 ) );
  };
  // balanced AND over a list of template literals
  auto make_tree = [&]( std::vector<uint16_t> lits ) {
    while ( lits.size() > 1 )
    {
      std::vector<uint16_t> next;
      for ( size_t k = 0; k + 1 < lits.size(); k += 2 )
      {
        next.push_back( make( lits[k], lits[k + 1] ) );
      }
      if ( lits.size() % 2 )
      {
        next.push_back( lits.back() );
      }
      lits = std::move( next );
    }
    return lits[0];
  };
  std::vector<uint16_t> cube_lits;
  for ( const auto& c : *cover )
  {
    std::vector<uint16_t> lits;
    for ( uint32_t v = 0; v < 4; ++v )
    {
      if ( c.pos & ( 1u << v ) )
      {
        lits.push_back( static_cast<uint16_t>( 2 * ( 1 + v ) ) );
      }
      else if ( c.neg & ( 1u << v ) )
      {
        lits.push_back( static_cast<uint16_t>( 2 * ( 1 + v ) + 1 ) );
      }
    }
    if ( lits.empty() )
    {
      // tautological cube: the whole function is constant true
      t.nodes.clear();
      t.output = 1;
      return t;
    }
    cube_lits.push_back( make_tree( std::move( lits ) ) );
  }
  if ( cube_lits.empty() )
  {
    t.output = 0;
    return t;
  }
  // OR of cubes via De Morgan
  std::vector<uint16_t> inverted;
  inverted.reserve( cube_lits.size() );
  for ( auto l : cube_lits )
  {
    inverted.push_back( static_cast<uint16_t>( l ^ 1 ) );
  }
  t.output = static_cast<uint16_t>( make_tree( std::move( inverted ) ) ^ 1 );
  return t;
}

constexpr const char* cache_magic = "aigopt-npn4 v1";

} // namespace

uint16_t npn_library::template_function( const npn_template& t )
{
  std::vector<uint16_t> values( 5 + t.nodes.size() );
  values[0] = 0x0000;
  for ( uint32_t v = 0; v < 4; ++v )
  {
    values[1 + v] = tt4_vars[v];
  }
  auto eval = [&]( uint16_t tlit ) {
    const uint16_t base = values[tlit >> 1];
    return ( tlit & 1 ) ? static_cast<uint16_t>( ~base ) : base;
  };
  for ( size_t k = 0; k < t.nodes.size(); ++k )
  {
    values[5 + k] = static_cast<uint16_t>( eval( t.nodes[k].fanin0 ) & eval( t.nodes[k].fanin1 ) );
  }
  return eval( t.output );
}

void npn_library::build_canon_table()
{
  canon_table_.resize( 65536 );
  for ( uint32_t f = 0; f < 65536; ++f )
  {
    canon_table_[f] = npn_canonicalize( static_cast<uint16_t>( f ) );
  }
}

void npn_library::index_classes()
{
  class_index_.assign( 65536, 0 );
  for ( size_t k = 0; k < classes_.size(); ++k )
  {
    class_index_[classes_[k]] = static_cast<uint16_t>( k + 1 );
  }
}

bool npn_library::has_template( uint16_t canonical ) const
{
  return class_index_[canonical] != 0;
}

const npn_template& npn_library::template_for( uint16_t canonical ) const
{
  const uint16_t idx = class_index_[canonical];
  if ( idx == 0 )
  {
    throw std::out_of_range( "no template for the requested class" );
  }
  return templates_[idx - 1];
}

npn_library npn_library::generate( uint32_t max_tree_nodes )
{
  npn_library lib;
  lib.build_canon_table();

  // collect the canonical representative of every class
  std::vector<bool> is_class( 65536, false );
  for ( uint32_t f = 0; f < 65536; ++f )
  {
    is_class[lib.canon_table_[f].canonical] = true;
  }
  for ( uint32_t f = 0; f < 65536; ++f )
  {
    if ( is_class[f] )
    {
      lib.classes_.push_back( static_cast<uint16_t>( f ) );
    }
  }

  // bottom-up enumeration of AND trees, cheapest first
  std::vector<fentry> table( 65536 );
  std::vector<std::vector<uint16_t>> frontier( max_tree_nodes + 1 );

  size_t classes_missing = lib.classes_.size();
  std::vector<bool> class_covered( 65536, false );
  auto cover = [&]( uint16_t f ) {
    const uint16_t c = lib.canon_table_[f].canonical;
    if ( !class_covered[c] )
    {
      class_covered[c] = true;
      --classes_missing;
    }
  };

  auto insert = [&]( uint16_t f, fentry e ) {
    if ( table[f].kind != fentry::unseen )
    {
      return;
    }
    table[f] = e;
    const uint16_t nf = static_cast<uint16_t>( ~f );
    if ( table[nf].kind == fentry::unseen )
    {
      table[nf] = { fentry::complement, e.cost, f, 0, 0 };
      cover( nf );
    }
    cover( f );
    if ( e.kind == fentry::and_node || ( e.kind == fentry::terminal && f != 0x0000 ) )
    {
      // constants never help as AND operands
      frontier[e.cost].push_back( f );
    }
  };

  insert( 0x0000, { fentry::terminal, 0, 0, 0, 0 } );
  for ( uint32_t v = 0; v < 4; ++v )
  {
    insert( tt4_vars[v], { fentry::terminal, 0, 0, 0, 0 } );
  }

  for ( uint32_t cost = 1; cost <= max_tree_nodes && classes_missing > 0; ++cost )
  {
    for ( uint32_t ca = 0; ca + 1 + ca <= cost; ++ca )
    {
      const uint32_t cb = cost - 1 - ca;
      if ( cb >= frontier.size() )
      {
        continue;
      }
      const auto& fa_list = frontier[ca];
      const auto& fb_list = frontier[cb];
      for ( size_t ia = 0; ia < fa_list.size(); ++ia )
      {
        const size_t jb0 = ( ca == cb ) ? ia : 0;
        for ( size_t ib = jb0; ib < fb_list.size(); ++ib )
        {
          const uint16_t fa = fa_list[ia];
          const uint16_t fb = fb_list[ib];
          for ( uint8_t pol = 0; pol < 4; ++pol )
          {
            const uint16_t ta = ( pol & 1 ) ? static_cast<uint16_t>( ~fa ) : fa;
            const uint16_t tb = ( pol & 2 ) ? static_cast<uint16_t>( ~fb ) : fb;
            const uint16_t h = ta & tb;
            if ( table[h].kind == fentry::unseen )
            {
              insert( h, { fentry::and_node, static_cast<uint8_t>( cost ), fa, fb, pol } );
            }
          }
        }
      }
    }
  }

  // build templates: enumerated structure when available, ISOP fallback otherwise
  lib.templates_.reserve( lib.classes_.size() );
  for ( const uint16_t c : lib.classes_ )
  {
    if ( table[c].kind != fentry::unseen )
    {
      lib.templates_.push_back( template_from_entry( c, table ) );
    }
    else
    {
      lib.templates_.push_back( template_from_isop( c ) );
    }
    if ( template_function( lib.templates_.back() ) != c )
    {
      throw std::logic_error( "generated template does not match its class function" );
    }
  }
  lib.index_classes();
  return lib;
}

void npn_library::save( const std::string& cache_path ) const
{
  std::ofstream out( cache_path );
  if ( !out )
  {
    throw std::runtime_error( "cannot write npn library cache '" + cache_path + "'" );
  }
  out << cache_magic << "\n" << classes_.size() << "\n";
  for ( size_t k = 0; k < classes_.size(); ++k )
  {
    const auto& t = templates_[k];
    out << classes_[k] << " " << t.nodes.size();
    for ( const auto& n : t.nodes )
    {
      out << " " << n.fanin0 << " " << n.fanin1;
    }
    out << " " << t.output << "\n";
  }
}

npn_library npn_library::load_or_generate( const std::string& cache_path )
{
  std::ifstream in( cache_path );
  if ( in )
  {
    std::string magic;
    std::getline( in, magic );
    if ( magic == cache_magic )
    {
      npn_library lib;
      lib.build_canon_table();
      size_t count = 0;
      in >> count;
      bool ok = count > 0;
      for ( size_t k = 0; ok && k < count; ++k )
      {
        uint16_t cls;
        size_t nodes;
        if ( !( in >> cls >> nodes ) )
        {
          ok = false;
          break;
        }
        npn_template t;
        for ( size_t j = 0; j < nodes; ++j )
        {
          uint16_t f0, f1;
          if ( !( in >> f0 >> f1 ) )
          {
            ok = false;
            break;
          }
          t.nodes.push_back( { f0, f1 } );
        }
        if ( !ok || !( in >> t.output ) || template_function( t ) != cls )
        {
          ok = false;
          break;
        }
        lib.classes_.push_back( cls );
        lib.templates_.push_back( std::move( t ) );
      }
      if ( ok )
      {
        lib.index_classes();
        // a stale cache may cover a different class set; verify completeness
        bool complete = true;
        for ( uint32_t f = 0; f < 65536 && complete; ++f )
        {
          complete = lib.class_index_[lib.canon_table_[f].canonical] != 0;
        }
        if ( complete )
        {
          return lib;
        }
      }
    }
  }
  auto lib = generate();
  try
  {
    lib.save( cache_path );
  }
  catch ( const std::exception& )
  {
    // cache is an optimization; failing to persist it is not fatal
  }
  return lib;
}

const npn_library& npn_library::instance()
{
  static const npn_library lib = generate();
  return lib;
}

} // namespace aigopt
