#pragma once

// Core And-Inverter Graph: literals, the immutable graph type, structural
// hashing, level computation, simulation, bounded equivalence checking and
// size statistics.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace aigopt {

/*! \brief Reference to a node plus a complement flag, packed AIGER-style.
 *
 * The raw encoding is `2 * node_index + complemented`, so raw 0 is constant
 * false and raw 1 is constant true.  Node 0 is always the constant node.
 */
class literal {
public:
  constexpr literal() : raw_( 0 ) {}
  constexpr explicit literal( uint32_t raw ) : raw_( raw ) {}
  constexpr literal( uint32_t index, bool complemented ) : raw_( ( index << 1 ) | ( complemented ? 1u : 0u ) ) {}

  constexpr uint32_t index() const { return raw_ >> 1; }
  constexpr bool complemented() const { return ( raw_ & 1u ) != 0; }
  constexpr uint32_t raw() const { return raw_; }

  constexpr literal operator!() const { return literal( raw_ ^ 1u ); }
  constexpr literal operator^( bool c ) const { return literal( raw_ ^ ( c ? 1u : 0u ) ); }

  constexpr bool operator==( const literal& other ) const { return raw_ == other.raw_; }
  constexpr bool operator!=( const literal& other ) const { return raw_ != other.raw_; }
  constexpr bool operator<( const literal& other ) const { return raw_ < other.raw_; }

  constexpr bool is_constant() const { return index() == 0; }

private:
  uint32_t raw_;
};

inline constexpr literal lit_false{ 0u };
inline constexpr literal lit_true{ 1u };

/*! \brief Fanin pair of an AND node. */
struct aig_node {
  literal fanin0;
  literal fanin1;
};

struct aig_error : std::runtime_error {
  explicit aig_error( const std::string& what ) : std::runtime_error( what ) {}
};

/*! \brief Immutable And-Inverter Graph.
 *
 * Node indices: 0 is the constant, 1..I the primary inputs, I+1..I+L the
 * latch outputs, and the AND nodes follow in topological order.  Latch
 * outputs act as combinational inputs; latch next-state literals act as
 * combinational outputs alongside the primary outputs.
 */
class aig {
public:
  aig() = default;

  /*! \brief Builds a graph from raw parts, validating structure.
   *
   * AND fanins must reference strictly lower node indices (topological
   * order); outputs and latch_next must reference existing nodes.  Throws
   * aig_error on violation.  Duplicate or degenerate AND nodes are allowed
   * here; use strash() to normalize.
   */
  static aig from_parts( uint32_t num_inputs, uint32_t num_latches,
                         std::vector<aig_node> and_nodes,
                         std::vector<literal> latch_next,
                         std::vector<literal> outputs );

  uint32_t num_inputs() const { return num_inputs_; }
  uint32_t num_latches() const { return num_latches_; }
  uint32_t num_cis() const { return num_inputs_ + num_latches_; }
  uint32_t num_outputs() const { return static_cast<uint32_t>( outputs_.size() ); }
  uint32_t num_ands() const { return static_cast<uint32_t>( and_nodes_.size() ); }

  /*! \brief Total node slots: constant + CIs + ANDs. */
  uint32_t node_count() const { return 1 + num_cis() + num_ands(); }
  uint32_t first_and() const { return 1 + num_cis(); }

  bool is_constant( uint32_t index ) const { return index == 0; }
  bool is_ci( uint32_t index ) const { return index >= 1 && index < first_and(); }
  bool is_and( uint32_t index ) const { return index >= first_and() && index < node_count(); }

  const aig_node& node( uint32_t index ) const { return and_nodes_[index - first_and()]; }

  const std::vector<aig_node>& and_nodes() const { return and_nodes_; }
  const std::vector<literal>& outputs() const { return outputs_; }
  const std::vector<literal>& latch_next() const { return latch_next_; }

private:
  uint32_t num_inputs_ = 0;
  uint32_t num_latches_ = 0;
  std::vector<aig_node> and_nodes_;
  std::vector<literal> latch_next_;
  std::vector<literal> outputs_;
};

/*! \brief Structural equality: same interface, same node list, same outputs. */
bool structurally_equal( const aig& a, const aig& b );

/*! \brief Incremental AIG constructor with structural hashing.
 *
 * add_and folds constants, identical and complementary fanins, orders the
 * fanin pair by raw encoding and deduplicates against previously created
 * nodes.  build() sweeps nodes unreachable from the combinational outputs.
 */
class aig_builder {
public:
  aig_builder() = default;
  explicit aig_builder( uint32_t num_cis );

  literal add_ci();
  literal ci_literal( uint32_t ci_index ) const;
  uint32_t num_cis() const { return num_cis_; }

  literal add_and( literal a, literal b );
  literal add_or( literal a, literal b ) { return !add_and( !a, !b ); }
  literal add_xor( literal a, literal b );
  literal add_mux( literal sel, literal then_lit, literal else_lit );

  /*! \brief Finalizes a combinational graph (all CIs are primary inputs). */
  aig build( const std::vector<literal>& outputs ) const;

  /*! \brief Finalizes a graph whose last num_latches CIs are latch outputs. */
  aig build( uint32_t num_latches, const std::vector<literal>& latch_next,
             const std::vector<literal>& outputs ) const;

private:
  uint32_t num_cis_ = 0;
  std::vector<aig_node> nodes_;
  std::unordered_map<uint64_t, uint32_t> hash_;
};

/*! \brief Rebuilds the graph with structural hashing and dangling-node sweep.
 *
 * The result is functionally equivalent, contains no duplicate fanin pairs,
 * no constant fanins and no identical or complementary fanin pairs, and has
 * at most as many AND nodes as the input.
 */
aig strash( const aig& g );

struct level_info {
  std::vector<uint32_t> level; //!< per node slot; CIs and the constant are 0
  uint32_t max_level;          //!< maximum over nodes feeding combinational outputs
};

level_info levels( const aig& g );

/*! \brief Evaluates the graph for one assignment of the combinational inputs. */
std::vector<bool> simulate( const aig& g, const std::vector<bool>& ci_values );

/*! \brief Word-parallel simulation.
 *
 * ci_words holds words_per_signal words per CI (CI-major); the result holds
 * words_per_signal words per node slot, complement flags not applied.
 */
std::vector<uint64_t> simulate_words( const aig& g, const std::vector<uint64_t>& ci_words,
                                      size_t words_per_signal );

/*! \brief Fills ci_words with the exhaustive input patterns for n variables. */
std::vector<uint64_t> exhaustive_ci_words( uint32_t num_vars );
size_t exhaustive_word_count( uint32_t num_vars );

enum class equiv_verdict {
  proven_equivalent,
  counterexample,
  undecided
};

struct equiv_result {
  equiv_verdict verdict;
  std::vector<bool> assignment; //!< distinguishing CI assignment when verdict is counterexample

  bool proven() const { return verdict == equiv_verdict::proven_equivalent; }
};

/*! \brief Checks functional equivalence of two graphs.
 *
 * With at most 16 combinational inputs the check is exhaustive and returns
 * proven_equivalent or counterexample.  Beyond that, `budget` random
 * assignments are simulated; the verdict is then counterexample or
 * undecided.  Throws std::invalid_argument when the CI/CO counts differ.
 */
equiv_result equivalent( const aig& a, const aig& b, uint32_t budget = 4096 );

struct aig_stats {
  uint32_t num_pi = 0;
  uint32_t num_po = 0;
  uint32_t num_nodes = 0;  //!< AND nodes
  uint32_t num_edges = 0;  //!< AND fanin edges plus output edges
  uint32_t num_levels = 0;
  uint32_t num_latches = 0;
  double pct_ands = 0.0; //!< AND nodes / (AND nodes + primary inputs)
  double pct_nots = 0.0; //!< complemented edges / total edges
};

aig_stats extract_stats( const aig& g );

/*! \brief Throws aig_error when the graph contains latches. */
void require_combinational( const aig& g );

} // namespace aigopt
