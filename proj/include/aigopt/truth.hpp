#pragma once

// Truth-table utilities: 4-variable tables with NPN canonicalization, and
// word-backed dynamic tables (up to 16 variables) with Minato-Morreale
// irredundant sum-of-products extraction.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace aigopt {

// ---------------------------------------------------------------------------
// 4-variable tables (one uint16_t, minterm m holds f(x) with x_i = bit i of m)
// ---------------------------------------------------------------------------

inline constexpr std::array<uint16_t, 4> tt4_vars = { 0xAAAA, 0xCCCC, 0xF0F0, 0xFF00 };

/*! \brief Applies g(x) = out ^ f(y) with y_j = x[perm[j]] ^ cmask_j. */
uint16_t tt4_transform( uint16_t f, const std::array<uint8_t, 4>& perm, uint8_t cmask, bool out );

/*! \brief Replicates a table over fewer variables up to 4 variables. */
uint16_t tt4_extend( uint16_t f, uint32_t from_vars );

struct npn_transform {
  std::array<uint8_t, 4> perm{ 0, 1, 2, 3 };
  uint8_t cmask = 0;
  bool output_complement = false;
};

struct npn_canon {
  uint16_t canonical = 0;
  npn_transform transform; //!< canonical == tt4_transform(f, perm, cmask, output_complement)
};

/*! \brief Exhaustive NPN canonicalization of a 4-variable function. */
npn_canon npn_canonicalize( uint16_t f );

/*! \brief Input/output binding that realizes f from a circuit for its canonical class.
 *
 * Canonical-circuit input i must be driven by source leaf input_source[i],
 * complemented when input_complement[i] is set; the circuit output is
 * complemented when output_complement is set.
 */
struct npn_binding {
  std::array<uint8_t, 4> input_source{};
  std::array<bool, 4> input_complement{};
  bool output_complement = false;
};

npn_binding npn_bind( const npn_transform& t );

// ---------------------------------------------------------------------------
// dynamic tables: 2^max(n,6)/64 words, bit pattern replicated below 6 vars
// ---------------------------------------------------------------------------

class ttd {
public:
  ttd() = default;
  explicit ttd( uint32_t num_vars );
  static ttd constant( uint32_t num_vars, bool value );
  static ttd var( uint32_t num_vars, uint32_t v );

  uint32_t num_vars() const { return num_vars_; }
  size_t num_words() const { return words_.size(); }
  const std::vector<uint64_t>& words() const { return words_; }
  std::vector<uint64_t>& words() { return words_; }

  bool is_zero() const;
  bool is_ones() const;
  bool get_bit( size_t minterm ) const;

  ttd operator&( const ttd& o ) const;
  ttd operator|( const ttd& o ) const;
  ttd operator^( const ttd& o ) const;
  ttd operator~() const;
  bool operator==( const ttd& o ) const { return words_ == o.words_; }

  ttd cofactor0( uint32_t v ) const;
  ttd cofactor1( uint32_t v ) const;
  bool depends_on( uint32_t v ) const;

private:
  uint32_t num_vars_ = 0;
  std::vector<uint64_t> words_;
};

/*! \brief Product term: conjunction of positive and negative literals. */
struct cube {
  uint32_t pos = 0;
  uint32_t neg = 0;
  uint32_t num_literals() const { return static_cast<uint32_t>( __builtin_popcount( pos ) + __builtin_popcount( neg ) ); }
};

/*! \brief Evaluates a cover as a truth table. */
ttd cover_function( const std::vector<cube>& cover, uint32_t num_vars );

/*! \brief Irredundant sum-of-products of a fully specified function.
 *
 * Returns std::nullopt when the cover would exceed max_cubes.
 */
std::optional<std::vector<cube>> isop( const ttd& f, uint32_t max_cubes = 0xFFFFFFFF );

} // namespace aigopt
