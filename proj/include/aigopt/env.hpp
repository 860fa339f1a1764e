#pragma once

// Optimization environment: holds the design under optimization, extracts
// the normalized state vector, applies actions and scores them with the
// multi-objective reward table.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "aigopt/aig.hpp"
#include "aigopt/transforms.hpp"

namespace aigopt {

/*! \brief Seven features, each normalized by its value for the initial design:
 * primary I/O count, node count, edge count, level count, latch count,
 * AND fraction, inverted-edge fraction. */
struct state_vector {
  std::array<double, 7> features{};

  double num_pio() const { return features[0]; }
  double num_nodes() const { return features[1]; }
  double num_edges() const { return features[2]; }
  double num_levels() const { return features[3]; }
  double num_latches() const { return features[4]; }
  double pct_ands() const { return features[5]; }
  double pct_nots() const { return features[6]; }
};

inline constexpr size_t state_size = 7;

struct metrics {
  uint32_t area_proxy = 0;  //!< AND node count
  uint32_t delay_proxy = 0; //!< level count
  bool constraint_met = false;
};

enum class direction : uint8_t { decrease, none, increase };

direction direction_of( uint32_t previous, uint32_t next );

/*! \brief Reward for every (area direction, constraint status) combination.
 * The constraint-met row ignores the delay direction. */
struct reward_table {
  std::array<double, 3> met{};                  // indexed by area direction
  std::array<std::array<double, 3>, 3> not_met{}; // [delay direction][area direction]

  static reward_table standard(); //!< the +-3..+3 integer ladder
};

double reward( const metrics& prev, const metrics& next, const reward_table& table );

state_vector state_of( const aig_stats& raw, const aig_stats& basis );

metrics metrics_of( const aig& g, uint32_t delay_constraint );

/*! \brief Selection rule for best designs: prefer constraint-met minimum
 * area; without any met design, minimum delay.  Strict comparison, so the
 * earlier snapshot wins ties. */
bool improves_on( const metrics& candidate, const metrics& incumbent );

struct env_config {
  std::string benchmark_path;
  uint32_t delay_constraint = 0;
  uint32_t max_iterations = 50;
};

struct episode_finished_error : std::logic_error {
  episode_finished_error() : std::logic_error( "episode iteration budget exhausted" ) {}
};

class synthesis_env {
public:
  /*! \brief Loads, strashes and snapshots the benchmark from config. */
  explicit synthesis_env( const env_config& config,
                          const npn_library& lib = npn_library::instance(),
                          reward_table table = reward_table::standard() );

  /*! \brief Uses an in-memory design instead of a file. */
  synthesis_env( aig design, uint32_t delay_constraint, uint32_t max_iterations,
                 const npn_library& lib = npn_library::instance(),
                 reward_table table = reward_table::standard() );

  state_vector reset();

  struct step_result {
    state_vector state;
    double reward = 0.0;
    metrics m;
  };

  /*! \brief Applies one transform; throws episode_finished_error past the
   * iteration cap and std::logic_error before the first reset. */
  step_result step( transform_id action );

  struct best_snapshot {
    aig design;
    metrics m;
    std::vector<transform_id> flow;
  };

  /*! \brief Episode-best snapshot; throws std::logic_error before any step. */
  const best_snapshot& best_design() const;

  const aig& current() const { return current_; }
  const aig& initial() const { return initial_; }
  const aig_stats& basis() const { return basis_; }
  metrics current_metrics() const { return metrics_of( current_, config_.delay_constraint ); }
  uint32_t steps_taken() const { return steps_; }
  uint32_t max_iterations() const { return config_.max_iterations; }
  uint32_t delay_constraint() const { return config_.delay_constraint; }
  const std::vector<transform_id>& episode_actions() const { return actions_; }

private:
  env_config config_;
  const npn_library& lib_;
  reward_table table_;
  aig initial_;
  aig current_;
  aig_stats basis_;
  uint32_t steps_ = 0;
  bool in_episode_ = false;
  std::vector<transform_id> actions_;
  std::optional<best_snapshot> best_;
};

} // namespace aigopt
