#pragma once

// AIGER 1.9 reader/writer, ASCII ("aag") and binary ("aig") variants.

#include <cstddef>
#include <string>
#include <string_view>

#include "aigopt/aig.hpp"

namespace aigopt {

struct aiger_parse_error : std::runtime_error {
  aiger_parse_error( const std::string& what, size_t offset )
      : std::runtime_error( what + " (at byte " + std::to_string( offset ) + ")" ), offset( offset )
  {
  }
  size_t offset;
};

/*! \brief Parses an AIGER file image (ASCII or binary, detected by header).
 *
 * Node order matches file order.  The symbol table and comment section are
 * accepted and ignored.  With require_combinational set, a nonzero latch
 * count raises aig_error.
 */
aig parse_aiger( std::string_view data, bool require_combinational = false );

/*! \brief Serializes the graph; ascii selects the "aag" variant. */
std::string write_aiger( const aig& g, bool ascii );

aig read_aiger_file( const std::string& path, bool require_combinational = false );
void write_aiger_file( const aig& g, const std::string& path, bool ascii );

} // namespace aigopt
