#pragma once

// The seven function-preserving optimization passes and their dispatcher.
// Each pass is a pure function from graph to graph; functional equivalence
// is the hard contract, size (or depth, for balance) must never get worse.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "aigopt/aig.hpp"
#include "aigopt/npn_library.hpp"

namespace aigopt {

enum class transform_id : uint8_t {
  resub = 0,
  resub_z,
  rewrite,
  rewrite_z,
  refactor,
  refactor_z,
  balance
};

inline constexpr std::array<transform_id, 7> all_transforms = {
    transform_id::resub,    transform_id::resub_z,  transform_id::rewrite, transform_id::rewrite_z,
    transform_id::refactor, transform_id::refactor_z, transform_id::balance };

inline constexpr size_t num_transforms = all_transforms.size();

const char* transform_name( transform_id t );
std::optional<transform_id> transform_from_name( std::string_view name );

/*! \brief Depth reduction: rebuilds maximal AND trees as balanced trees,
 * pairing lowest-level operands first.  Never increases the level count. */
aig balance( const aig& g );

/*! \brief Cut rewriting: replaces 4-feasible cuts with precomputed
 * implementations of their NPN class when that shrinks the graph
 * (zero_cost also accepts size-neutral replacements). */
aig rewrite( const aig& g, bool zero_cost, const npn_library& lib = npn_library::instance() );

/*! \brief Cone resynthesis through irredundant sum-of-products. */
aig refactor( const aig& g, bool zero_cost );

/*! \brief Resubstitution: re-expresses nodes with existing divisors, plus a
 * global merge of functionally equivalent nodes. */
aig resub( const aig& g, bool zero_cost );

/*! \brief Strashes, dispatches to the selected pass and compacts. */
aig apply_transform( const aig& g, transform_id t,
                     const npn_library& lib = npn_library::instance() );

} // namespace aigopt
