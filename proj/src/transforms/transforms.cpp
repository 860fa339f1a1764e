#include "aigopt/transforms.hpp"

namespace aigopt {

const char* transform_name( transform_id t )
{
  switch ( t )
  {
  case transform_id::resub:
    return "resub";
  case transform_id::resub_z:
    return "resub -z";
  case transform_id::rewrite:
    return "rewrite";
  case transform_id::rewrite_z:
    return "rewrite -z";
  case transform_id::refactor:
    return "refactor";
  case transform_id::refactor_z:
    return "refactor -z";
  case transform_id::balance:
    return "balance";
  }
  return "?";
}

std::optional<transform_id> transform_from_name( std::string_view name )
{
  for ( const auto t : all_transforms )
  {
    if ( name == transform_name( t ) )
    {
      return t;
    }
  }
  return std::nullopt;
}

aig apply_transform( const aig& g, transform_id t, const npn_library& lib )
{
  const aig s = strash( g );
  switch ( t )
  {
  case transform_id::resub:
    return resub( s, false );
  case transform_id::resub_z:
    return resub( s, true );
  case transform_id::rewrite:
    return rewrite( s, false, lib );
  case transform_id::rewrite_z:
    return rewrite( s, true, lib );
  case transform_id::refactor:
    return refactor( s, false );
  case transform_id::refactor_z:
    return refactor( s, true );
  case transform_id::balance:
    return balance( s );
  }
  return s;
}

} // namespace aigopt
