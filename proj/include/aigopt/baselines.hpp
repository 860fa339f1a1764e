#pragma once

// Comparison methods: greedy area descent, a fixed-script runner, and a
// uniform random search with the same step budget as the agent.

#include <string>
#include <vector>

#include "aigopt/env.hpp"

namespace aigopt {

struct greedy_entry {
  transform_id chosen;
  metrics m;
};

struct greedy_result {
  std::vector<greedy_entry> history;
  aig final_design;
  std::string stop_reason;
};

/*! \brief Per iteration, evaluates all seven transforms on private copies
 * (concurrently), adopts the minimum-area candidate (ties: lower delay,
 * then transform order), and stops when two consecutive adopted areas are
 * equal. */
greedy_result greedy( const aig& design, uint32_t delay_constraint,
                      const npn_library& lib = npn_library::instance(), bool parallel = true );

struct script_result {
  aig design;
  metrics m;
};

struct script_error : std::runtime_error {
  explicit script_error( const std::string& what ) : std::runtime_error( what ) {}
};

/*! \brief Applies a fixed transform sequence. */
script_result run_script( const aig& design, const std::vector<transform_id>& flow,
                          uint32_t delay_constraint,
                          const npn_library& lib = npn_library::instance() );

/*! \brief Parses one transform name per line; unknown names raise
 * script_error naming the offending entry. */
std::vector<transform_id> parse_script( const std::string& text );

struct search_result {
  aig best_design;
  metrics best_metrics;
  std::vector<transform_id> best_flow;
};

/*! \brief Uniformly random action sequences, episodes x iterations steps in
 * total, best design tracked by the environment's selection rule. */
search_result random_search( const aig& design, uint32_t delay_constraint, uint32_t episodes,
                             uint32_t iterations, uint64_t seed,
                             const npn_library& lib = npn_library::instance() );

} // namespace aigopt
