#pragma once

// Minimal dense-network substrate for the actor and critic: forward pass
// with cached activations, exact reverse-mode gradients, Xavier
// initialization and Adam.  All arithmetic is double precision.

#include <cstdint>
#include <string>
#include <vector>

#include "aigopt/rng.hpp"

namespace aigopt {

enum class activation : uint8_t { rectifier, identity };

struct dense_layer {
  uint32_t fan_in = 0;
  uint32_t fan_out = 0;
  activation act = activation::identity;
  std::vector<double> weights; //!< row-major, fan_out x fan_in
  std::vector<double> bias;    //!< fan_out
};

/*! \brief Feed-forward network; the head (softmax for the actor, scalar
 * identity for the critic) is applied by the caller on the final logits. */
struct mlp {
  std::vector<dense_layer> layers;

  /*! \brief dims = {in, hidden..., out}; hidden layers use the rectifier. */
  static mlp make( const std::vector<uint32_t>& dims );

  size_t num_parameters() const;
  uint32_t input_size() const { return layers.front().fan_in; }
  uint32_t output_size() const { return layers.back().fan_out; }
};

/*! \brief Uniform Xavier initialization, biases zero. */
void xavier_init( dense_layer& layer, rng64& rng );
void xavier_init( mlp& net, rng64& rng );

struct forward_cache {
  std::vector<std::vector<double>> inputs;          //!< per layer
  std::vector<std::vector<double>> preactivations;  //!< per layer
};

/*! \brief Network output (final-layer logits).  Throws on non-finite input. */
std::vector<double> forward( const mlp& net, const std::vector<double>& input,
                             forward_cache* cache = nullptr );

/*! \brief Numerically stable softmax (max subtraction). */
std::vector<double> softmax( const std::vector<double>& logits );

struct gradients {
  std::vector<std::vector<double>> weights; //!< per layer, same shapes
  std::vector<std::vector<double>> bias;

  static gradients zeros_like( const mlp& net );
  void accumulate( const gradients& other, double scale = 1.0 );
  double global_norm() const;
  void scale( double factor );
};

/*! \brief Exact gradients of a scalar loss given dLoss/dLogits.
 * The cache must come from a forward pass over the same input. */
gradients backward( const mlp& net, const forward_cache& cache,
                    const std::vector<double>& output_grad );

/*! \brief Scales gradients down to the given global norm when they exceed it. */
void clip_global_norm( gradients& grads, double max_norm );

struct adam_state {
  std::vector<std::vector<double>> m_weights, v_weights;
  std::vector<std::vector<double>> m_bias, v_bias;
  uint64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static adam_state zeros_like( const mlp& net );
};

/*! \brief One Adam update with bias correction.  Throws on shape mismatch. */
void adam_step( mlp& net, const gradients& grads, adam_state& state, double lr );

/*! \brief Flat versioned binary checkpoint of parameters plus Adam state. */
void save_checkpoint( const mlp& net, const adam_state& state, const std::string& path );
bool load_checkpoint( mlp& net, adam_state& state, const std::string& path );

} // namespace aigopt
