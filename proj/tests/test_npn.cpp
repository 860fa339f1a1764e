#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "aigopt/aig.hpp"
#include "aigopt/npn_library.hpp"
#include "aigopt/rng.hpp"

using namespace aigopt;

namespace {

// independent check: realize f through the library inside a fresh builder
// and compare truth tables by exhaustive simulation
bool instantiation_matches( const npn_library& lib, uint16_t f )
{
  aig_builder b;
  std::array<literal, 4> ins;
  for ( auto& l : ins )
  {
    l = b.add_ci();
  }
  const literal root =
      lib.instantiate( f, ins, lit_false, [&]( literal x, literal y ) { return b.add_and( x, y ); } );
  const aig g = b.build( { root } );
  for ( uint32_t m = 0; m < 16; ++m )
  {
    const std::vector<bool> assignment{ ( m & 1 ) != 0, ( m & 2 ) != 0, ( m & 4 ) != 0,
                                        ( m & 8 ) != 0 };
    if ( simulate( g, assignment )[0] != ( ( ( f >> m ) & 1 ) != 0 ) )
    {
      return false;
    }
  }
  return true;
}

} // namespace

TEST_CASE( "library covers exactly the 222 classes" )
{
  const auto& lib = npn_library::instance();
  CHECK( lib.num_classes() == 222 );
  for ( const uint16_t c : lib.classes() )
  {
    CHECK( npn_library::template_function( lib.template_for( c ) ) == c );
    CHECK( lib.canonicalize( c ).canonical == c );
  }
}

TEST_CASE( "constant class has an empty template" )
{
  const auto& lib = npn_library::instance();
  const uint16_t cls = lib.canonicalize( 0x0000 ).canonical;
  CHECK( lib.template_for( cls ).nodes.empty() );
}

TEST_CASE( "the AND4 class uses the minimum tree" )
{
  const auto& lib = npn_library::instance();
  const uint16_t and4 = 0x8000; // only minterm 15
  const uint16_t cls = lib.canonicalize( and4 ).canonical;
  CHECK( lib.template_for( cls ).nodes.size() == 3 );
}

TEST_CASE( "random functions rebuild exactly through the library" )
{
  const auto& lib = npn_library::instance();
  rng64 rng( 41 );
  for ( int k = 0; k < 1000; ++k )
  {
    const uint16_t f = static_cast<uint16_t>( rng.next() );
    CHECK( instantiation_matches( lib, f ) );
  }
}

TEST_CASE( "projection and constant functions instantiate without nodes" )
{
  const auto& lib = npn_library::instance();
  CHECK( instantiation_matches( lib, 0x0000 ) );
  CHECK( instantiation_matches( lib, 0xFFFF ) );
  for ( uint32_t v = 0; v < 4; ++v )
  {
    CHECK( instantiation_matches( lib, tt4_vars[v] ) );
    CHECK( instantiation_matches( lib, static_cast<uint16_t>( ~tt4_vars[v] ) ) );
  }
}

TEST_CASE( "cache file round trip and corruption recovery" )
{
  const std::string path = "npn_cache_test.tmp";
  const auto& lib = npn_library::instance();
  lib.save( path );

  const auto loaded = npn_library::load_or_generate( path );
  CHECK( loaded.num_classes() == 222 );
  for ( const uint16_t c : lib.classes() )
  {
    CHECK( npn_library::template_function( loaded.template_for( c ) ) == c );
  }

  {
    std::ofstream corrupt( path );
    corrupt << "aigopt-npn4 v1\n3\nnot numbers\n";
  }
  const auto regenerated = npn_library::load_or_generate( path );
  CHECK( regenerated.num_classes() == 222 );
  std::remove( path.c_str() );
}
