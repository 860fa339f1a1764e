#pragma once

// Advantage actor-critic agent and the episode/training loop that drives
// the optimization environment.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "aigopt/env.hpp"
#include "aigopt/nn.hpp"
#include "aigopt/rng.hpp"

namespace aigopt {

enum class advantage_mode : uint8_t {
  discounted_return, //!< A_t = G_t - V(s_t) with full-episode discounted returns
  one_step_td        //!< A_t = r_t + gamma V(s_{t+1}) - V(s_t)
};

struct hyperparams {
  uint32_t episodes = 50;
  uint32_t iterations = 50;
  double learning_rate = 0.01;
  double discount = 0.99;
  double clip_norm = 5.0;
  std::vector<uint32_t> actor_hidden = { 20, 20 };
  std::vector<uint32_t> critic_hidden = { 10 };
  advantage_mode mode = advantage_mode::discounted_return;
  uint64_t seed = 1;
};

struct trajectory {
  std::vector<state_vector> states;
  std::vector<transform_id> actions;
  std::vector<double> rewards;

  size_t length() const { return rewards.size(); }
};

/*! \brief Categorical draw.  Throws std::invalid_argument for negative or
 * non-normalized probabilities. */
transform_id sample_action( const std::vector<double>& probs, rng64& rng );

/*! \brief Backward discounted sums: out[t] = r[t] + gamma * out[t+1]. */
std::vector<double> discount_rewards( const std::vector<double>& rewards, double gamma );

/*! \brief r + gamma * v_next - v; pass v_next = 0 for the terminal step. */
double advantage( double r, double v_next, double v, double gamma );

/*! \brief Temporal-difference error; same arithmetic as advantage. */
double td_error( double r, double v_next, double v, double gamma );

struct loss_report {
  double actor_loss = 0.0;
  double critic_loss = 0.0;
};

class a2c_agent {
public:
  a2c_agent( const hyperparams& hp, rng64& init_rng );

  /*! \brief Action distribution for one state. */
  std::vector<double> policy( const state_vector& s ) const;

  /*! \brief Critic's value estimate for one state. */
  double value( const state_vector& s ) const;

  /*! \brief One batched update from a complete episode. */
  loss_report train_episode( const trajectory& traj );

  const mlp& actor() const { return actor_; }
  const mlp& critic() const { return critic_; }
  mlp& actor() { return actor_; }
  mlp& critic() { return critic_; }

  void save( const std::string& actor_path, const std::string& critic_path ) const;
  bool load( const std::string& actor_path, const std::string& critic_path );

private:
  hyperparams hp_;
  mlp actor_;
  mlp critic_;
  adam_state actor_adam_;
  adam_state critic_adam_;
};

struct episode_row {
  uint32_t episode = 0;
  double total_reward = 0.0;
  uint32_t best_nodes = 0;
  uint32_t best_levels = 0;
  bool constraint_met = false;
  loss_report losses;
};

struct run_result {
  aig best_design;
  metrics best_metrics;
  std::vector<transform_id> best_flow;
  std::vector<episode_row> episodes;
};

struct run_hooks {
  std::ostream* step_csv = nullptr;    //!< episode,iteration,action,nodes,levels,reward,constraint_met
  std::ostream* episode_csv = nullptr; //!< episode,total_reward,best_nodes,best_levels,constraint_met
  std::function<void( const a2c_agent& )> on_finish;
};

/*! \brief Runs N training episodes of k iterations and tracks the best
 * design seen across all of them. */
run_result run( synthesis_env& env, const hyperparams& hp, const run_hooks& hooks = {} );

void write_step_csv_header( std::ostream& out );
void write_episode_csv_header( std::ostream& out );

} // namespace aigopt
