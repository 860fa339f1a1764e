#pragma once

// Precomputed AIG implementations for every NPN class of 4-variable
// functions, used by the rewriting pass.  Templates come from a bottom-up
// enumeration of AND trees over the four variables; classes the bounded
// enumeration misses fall back to an ISOP-derived structure.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "aigopt/truth.hpp"

namespace aigopt {

/*! \brief AND-tree template over four abstract inputs.
 *
 * Template literals are packed as 2 * ref + complement where ref 0 is the
 * constant, refs 1..4 the inputs, and refs 5.. the template's own nodes in
 * topological order.
 */
struct npn_template {
  struct tnode {
    uint16_t fanin0;
    uint16_t fanin1;
  };
  std::vector<tnode> nodes;
  uint16_t output = 0;
};

class npn_library {
public:
  /*! \brief Process-wide library, generated on first use. */
  static const npn_library& instance();

  /*! \brief Regenerates from scratch; max_tree_nodes bounds the enumeration. */
  static npn_library generate( uint32_t max_tree_nodes = 16 );

  /*! \brief Loads the cache file, regenerating when absent or version-mismatched. */
  static npn_library load_or_generate( const std::string& cache_path );

  void save( const std::string& cache_path ) const;

  size_t num_classes() const { return classes_.size(); }
  const std::vector<uint16_t>& classes() const { return classes_; }

  bool has_template( uint16_t canonical ) const;
  const npn_template& template_for( uint16_t canonical ) const;

  /*! \brief Table-backed canonicalization (identical to npn_canonicalize). */
  const npn_canon& canonicalize( uint16_t f ) const { return canon_table_[f]; }

  /*! \brief Instantiates the template of f's class so that the result computes f.
   *
   * inputs[k] is the literal for variable k of f; make(a, b) must build an
   * AND and return its literal.  LitT needs operator^(bool).
   */
  template<typename LitT, typename MakeAnd>
  LitT instantiate( uint16_t f, const std::array<LitT, 4>& inputs, LitT const_false, MakeAnd&& make ) const
  {
    const auto& canon = canonicalize( f );
    const auto binding = npn_bind( canon.transform );
    const auto& tmpl = template_for( canon.canonical );

    std::array<LitT, 4> bound;
    for ( uint32_t i = 0; i < 4; ++i )
    {
      bound[i] = inputs[binding.input_source[i]] ^ binding.input_complement[i];
    }
    std::vector<LitT> node_lits( tmpl.nodes.size(), const_false );
    auto resolve = [&]( uint16_t tlit ) {
      const uint32_t ref = tlit >> 1;
      const bool comp = ( tlit & 1 ) != 0;
      if ( ref == 0 )
      {
        return const_false ^ comp;
      }
      if ( ref <= 4 )
      {
        return bound[ref - 1] ^ comp;
      }
      return node_lits[ref - 5] ^ comp;
    };
    for ( size_t k = 0; k < tmpl.nodes.size(); ++k )
    {
      node_lits[k] = make( resolve( tmpl.nodes[k].fanin0 ), resolve( tmpl.nodes[k].fanin1 ) );
    }
    return resolve( tmpl.output ) ^ binding.output_complement;
  }

  /*! \brief Truth table the template produces over its four abstract inputs. */
  static uint16_t template_function( const npn_template& t );

private:
  std::vector<uint16_t> classes_;                 // sorted canonical representatives
  std::vector<npn_template> templates_;           // aligned with classes_
  std::vector<uint16_t> class_index_;             // canonical tt -> index+1, 0 = none
  std::vector<npn_canon> canon_table_;            // all 65536 functions

  void build_canon_table();
  void index_classes();
};

} // namespace aigopt
