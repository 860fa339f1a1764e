#pragma once

// Mutable AIG used inside the optimization passes: structural hashing on
// the fly, fanout lists, node replacement with cascading merges, and exact
// bookkeeping of how many nodes a candidate replacement adds or frees.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "aigopt/aig.hpp"

namespace aigopt {

class work_aig {
public:
  enum class node_state : uint8_t { alive, alias, dead };

  /*! \brief Imports a strashed graph.  Throws aig_error on duplicate or
   * degenerate AND nodes (run strash() first). */
  explicit work_aig( const aig& g );

  /*! \brief Exports the live graph, compacted and structurally hashed. */
  aig to_aig() const;

  uint32_t size() const { return static_cast<uint32_t>( nodes_.size() ); }
  uint32_t num_inputs() const { return num_inputs_; }
  uint32_t num_latches() const { return num_latches_; }
  uint32_t num_cis() const { return num_inputs_ + num_latches_; }
  uint32_t first_and() const { return 1 + num_cis(); }
  uint32_t num_live_ands() const { return live_ands_; }

  bool is_ci( uint32_t n ) const { return n >= 1 && n < first_and(); }
  bool is_and_index( uint32_t n ) const { return n >= first_and(); }
  node_state state_of( uint32_t n ) const { return nodes_[n].st; }
  bool is_alive( uint32_t n ) const { return nodes_[n].st == node_state::alive; }

  literal fanin0( uint32_t n ) const { return nodes_[n].f0; }
  literal fanin1( uint32_t n ) const { return nodes_[n].f1; }
  uint32_t level( uint32_t n ) const { return nodes_[n].level; }
  uint32_t ref_count( uint32_t n ) const { return nodes_[n].nref; }
  const std::vector<uint32_t>& fanouts( uint32_t n ) const { return fanouts_[n]; }
  const std::vector<literal>& outputs() const { return outputs_; }
  const std::vector<literal>& latch_next() const { return latch_next_; }

  /*! \brief Chases alias records to the live literal. */
  literal resolve( literal l ) const;

  /*! \brief AND with folding and hashing; creates a node only on a miss. */
  literal make_and( literal a, literal b );

  /*! \brief Exact levels of the current live graph (per node slot). */
  std::vector<uint32_t> recompute_levels();

  /*! \brief Word-parallel simulation of all live nodes (dead slots zero). */
  std::vector<uint64_t> simulate_all( const std::vector<uint64_t>& ci_words,
                                      size_t words_per_signal ) const;

  // -- candidate replacement protocol ---------------------------------------
  //
  // wm = watermark(); build a candidate with make_and; nodes_added(wm) and
  // freed_if_replaced(n, root) give the exact size delta of commit; either
  // replace(n, root_literal) to commit or rollback_to(wm) to discard.

  uint32_t watermark() const { return size(); }
  uint32_t nodes_added( uint32_t watermark ) const { return size() - watermark; }
  void rollback_to( uint32_t watermark );

  /*! \brief Live AND nodes that die when n's incoming references go away;
   * keep (and its cone) is protected.  Pass UINT32_MAX for plain MFFC size. */
  uint32_t freed_if_replaced( uint32_t n, uint32_t keep ) const;
  uint32_t mffc_size( uint32_t n ) const { return freed_if_replaced( n, UINT32_MAX ); }

  /*! \brief Redirects every reference to n onto `with`, folding and merging
   * downstream nodes as needed and freeing unreferenced cones. */
  void replace( uint32_t n, literal with );

  /*! \brief Validates ref counts, hash table, edge lists and acyclicity.
   * Throws std::logic_error on violation (test support). */
  void check_consistency() const;

private:
  struct wnode {
    literal f0;
    literal f1;
    uint32_t nref = 0;
    uint32_t level = 0;
    node_state st = node_state::alive;
    literal alias_to;
  };

  static uint64_t key_of( literal a, literal b )
  {
    return ( static_cast<uint64_t>( a.raw() ) << 32 ) | b.raw();
  }

  void pin( literal l ) { ++nodes_[l.index()].nref; }
  void unpin( literal l );
  void kill( uint32_t n );
  void detach_fanin_edges( uint32_t n, std::vector<uint32_t>& zeroed );
  void hash_erase( uint32_t n );

  uint32_t num_inputs_ = 0;
  uint32_t num_latches_ = 0;
  uint32_t live_ands_ = 0;
  std::vector<wnode> nodes_;
  std::vector<std::vector<uint32_t>> fanouts_;
  std::unordered_map<uint64_t, uint32_t> hash_;
  std::vector<literal> outputs_;
  std::vector<literal> latch_next_;
};

} // namespace aigopt
