#include "aigopt/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace aigopt {

mlp mlp::make( const std::vector<uint32_t>& dims )
{
  if ( dims.size() < 2 )
  {
    throw std::invalid_argument( "network needs at least input and output dimensions" );
  }
  mlp net;
  for ( size_t k = 0; k + 1 < dims.size(); ++k )
  {
    if ( dims[k] == 0 || dims[k + 1] == 0 )
    {
      throw std::invalid_argument( "zero layer dimension" );
    }
    dense_layer layer;
    layer.fan_in = dims[k];
    layer.fan_out = dims[k + 1];
    layer.act = ( k + 2 < dims.size() ) ? activation::rectifier : activation::identity;
    layer.weights.assign( static_cast<size_t>( dims[k] ) * dims[k + 1], 0.0 );
    layer.bias.assign( dims[k + 1], 0.0 );
    net.layers.push_back( std::move( layer ) );
  }
  return net;
}

size_t mlp::num_parameters() const
{
  size_t n = 0;
  for ( const auto& l : layers )
  {
    n += l.weights.size() + l.bias.size();
  }
  return n;
}

void xavier_init( dense_layer& layer, rng64& rng )
{
  if ( layer.fan_in == 0 || layer.fan_out == 0 )
  {
    throw std::invalid_argument( "xavier initialization needs positive dimensions" );
  }
  const double bound = std::sqrt( 6.0 / ( layer.fan_in + layer.fan_out ) );
  for ( auto& w : layer.weights )
  {
    w = rng.uniform( -bound, bound );
  }
  std::fill( layer.bias.begin(), layer.bias.end(), 0.0 );
}

void xavier_init( mlp& net, rng64& rng )
{
  for ( auto& layer : net.layers )
  {
    xavier_init( layer, rng );
  }
}

std::vector<double> forward( const mlp& net, const std::vector<double>& input, forward_cache* cache )
{
  if ( input.size() != net.input_size() )
  {
    throw std::invalid_argument( "input dimension mismatch" );
  }
  for ( const double x : input )
  {
    if ( !std::isfinite( x ) )
    {
      throw std::invalid_argument( "non-finite network input" );
    }
  }
  if ( cache )
  {
    cache->inputs.clear();
    cache->preactivations.clear();
  }
  std::vector<double> a = input;
  for ( const auto& layer : net.layers )
  {
    if ( cache )
    {
      cache->inputs.push_back( a );
    }
    std::vector<double> z( layer.fan_out );
    for ( uint32_t o = 0; o < layer.fan_out; ++o )
    {
      double acc = layer.bias[o];
      const double* row = layer.weights.data() + static_cast<size_t>( o ) * layer.fan_in;
      for ( uint32_t i = 0; i < layer.fan_in; ++i )
      {
        acc += row[i] * a[i];
      }
      z[o] = acc;
    }
    if ( cache )
    {
      cache->preactivations.push_back( z );
    }
    if ( layer.act == activation::rectifier )
    {
      for ( auto& v : z )
      {
        v = v > 0.0 ? v : 0.0;
      }
    }
    a = std::move( z );
  }
  return a;
}

std::vector<double> softmax( const std::vector<double>& logits )
{
  const double peak = *std::max_element( logits.begin(), logits.end() );
  std::vector<double> p( logits.size() );
  double total = 0.0;
  for ( size_t k = 0; k < logits.size(); ++k )
  {
    p[k] = std::exp( logits[k] - peak );
    total += p[k];
  }
  for ( auto& v : p )
  {
    v /= total;
  }
  return p;
}

gradients gradients::zeros_like( const mlp& net )
{
  gradients g;
  for ( const auto& layer : net.layers )
  {
    g.weights.emplace_back( layer.weights.size(), 0.0 );
    g.bias.emplace_back( layer.bias.size(), 0.0 );
  }
  return g;
}

void gradients::accumulate( const gradients& other, double scale )
{
  for ( size_t l = 0; l < weights.size(); ++l )
  {
    for ( size_t k = 0; k < weights[l].size(); ++k )
    {
      weights[l][k] += scale * other.weights[l][k];
    }
    for ( size_t k = 0; k < bias[l].size(); ++k )
    {
      bias[l][k] += scale * other.bias[l][k];
    }
  }
}

double gradients::global_norm() const
{
  double sum = 0.0;
  for ( const auto& w : weights )
  {
    for ( const double v : w )
    {
      sum += v * v;
    }
  }
  for ( const auto& b : bias )
  {
    for ( const double v : b )
    {
      sum += v * v;
    }
  }
  return std::sqrt( sum );
}

void gradients::scale( double factor )
{
  for ( auto& w : weights )
  {
    for ( auto& v : w )
    {
      v *= factor;
    }
  }
  for ( auto& b : bias )
  {
    for ( auto& v : b )
    {
      v *= factor;
    }
  }
}

gradients backward( const mlp& net, const forward_cache& cache, const std::vector<double>& output_grad )
{
  if ( cache.inputs.size() != net.layers.size() || cache.preactivations.size() != net.layers.size() )
  {
    throw std::logic_error( "forward cache does not match the network" );
  }
  if ( output_grad.size() != net.output_size() )
  {
    throw std::invalid_argument( "output gradient dimension mismatch" );
  }
  gradients g = gradients::zeros_like( net );
  std::vector<double> upstream = output_grad;
  for ( size_t l = net.layers.size(); l-- > 0; )
  {
    const auto& layer = net.layers[l];
    const auto& z = cache.preactivations[l];
    const auto& x = cache.inputs[l];
    std::vector<double> dz( layer.fan_out );
    for ( uint32_t o = 0; o < layer.fan_out; ++o )
    {
      const double gate = layer.act == activation::rectifier ? ( z[o] > 0.0 ? 1.0 : 0.0 ) : 1.0;
      dz[o] = upstream[o] * gate;
    }
    for ( uint32_t o = 0; o < layer.fan_out; ++o )
    {
      double* wrow = g.weights[l].data() + static_cast<size_t>( o ) * layer.fan_in;
      for ( uint32_t i = 0; i < layer.fan_in; ++i )
      {
        wrow[i] += dz[o] * x[i];
      }
      g.bias[l][o] += dz[o];
    }
    std::vector<double> downstream( layer.fan_in, 0.0 );
    for ( uint32_t o = 0; o < layer.fan_out; ++o )
    {
      const double* row = layer.weights.data() + static_cast<size_t>( o ) * layer.fan_in;
      for ( uint32_t i = 0; i < layer.fan_in; ++i )
      {
        downstream[i] += row[i] * dz[o];
      }
    }
    upstream = std::move( downstream );
  }
  return g;
}

void clip_global_norm( gradients& grads, double max_norm )
{
  const double norm = grads.global_norm();
  if ( norm > max_norm && norm > 0.0 )
  {
    grads.scale( max_norm / norm );
  }
}

adam_state adam_state::zeros_like( const mlp& net )
{
  adam_state s;
  for ( const auto& layer : net.layers )
  {
    s.m_weights.emplace_back( layer.weights.size(), 0.0 );
    s.v_weights.emplace_back( layer.weights.size(), 0.0 );
    s.m_bias.emplace_back( layer.bias.size(), 0.0 );
    s.v_bias.emplace_back( layer.bias.size(), 0.0 );
  }
  return s;
}

namespace {

void adam_update( std::vector<double>& params, const std::vector<double>& grads,
                  std::vector<double>& m, std::vector<double>& v, const adam_state& s, double lr )
{
  const double bc1 = 1.0 - std::pow( s.beta1, static_cast<double>( s.step ) );
  const double bc2 = 1.0 - std::pow( s.beta2, static_cast<double>( s.step ) );
  for ( size_t k = 0; k < params.size(); ++k )
  {
    m[k] = s.beta1 * m[k] + ( 1.0 - s.beta1 ) * grads[k];
    v[k] = s.beta2 * v[k] + ( 1.0 - s.beta2 ) * grads[k] * grads[k];
    const double mhat = m[k] / bc1;
    const double vhat = v[k] / bc2;
    params[k] -= lr * mhat / ( std::sqrt( vhat ) + s.epsilon );
  }
}

} // namespace

void adam_step( mlp& net, const gradients& grads, adam_state& state, double lr )
{
  if ( grads.weights.size() != net.layers.size() || state.m_weights.size() != net.layers.size() )
  {
    throw std::invalid_argument( "gradient or state shape mismatch" );
  }
  ++state.step;
  for ( size_t l = 0; l < net.layers.size(); ++l )
  {
    if ( grads.weights[l].size() != net.layers[l].weights.size() ||
         grads.bias[l].size() != net.layers[l].bias.size() )
    {
      throw std::invalid_argument( "gradient shape mismatch at layer " + std::to_string( l ) );
    }
    adam_update( net.layers[l].weights, grads.weights[l], state.m_weights[l], state.v_weights[l],
                 state, lr );
    adam_update( net.layers[l].bias, grads.bias[l], state.m_bias[l], state.v_bias[l], state, lr );
  }
  for ( const auto& layer : net.layers )
  {
    for ( const double w : layer.weights )
    {
      if ( !std::isfinite( w ) )
      {
        throw std::runtime_error( "non-finite parameter after update" );
      }
    }
  }
}

namespace {

constexpr uint32_t checkpoint_version = 1;
constexpr char checkpoint_magic[8] = { 'a', 'i', 'g', 'o', 'n', 'n', '0', '\n' };

void put_u32( std::ostream& out, uint32_t v )
{
  out.write( reinterpret_cast<const char*>( &v ), sizeof v );
}

void put_u64( std::ostream& out, uint64_t v )
{
  out.write( reinterpret_cast<const char*>( &v ), sizeof v );
}

void put_doubles( std::ostream& out, const std::vector<double>& v )
{
  put_u64( out, v.size() );
  out.write( reinterpret_cast<const char*>( v.data() ),
             static_cast<std::streamsize>( v.size() * sizeof( double ) ) );
}

bool get_u32( std::istream& in, uint32_t& v )
{
  return static_cast<bool>( in.read( reinterpret_cast<char*>( &v ), sizeof v ) );
}

bool get_u64( std::istream& in, uint64_t& v )
{
  return static_cast<bool>( in.read( reinterpret_cast<char*>( &v ), sizeof v ) );
}

bool get_doubles( std::istream& in, std::vector<double>& v, size_t expected )
{
  uint64_t n = 0;
  if ( !get_u64( in, n ) || n != expected )
  {
    return false;
  }
  v.resize( n );
  return static_cast<bool>( in.read( reinterpret_cast<char*>( v.data() ),
                                     static_cast<std::streamsize>( n * sizeof( double ) ) ) );
}

} // namespace

void save_checkpoint( const mlp& net, const adam_state& state, const std::string& path )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
  {
    throw std::runtime_error( "cannot write checkpoint '" + path + "'" );
  }
  out.write( checkpoint_magic, sizeof checkpoint_magic );
  put_u32( out, checkpoint_version );
  put_u32( out, static_cast<uint32_t>( net.layers.size() ) );
  for ( const auto& layer : net.layers )
  {
    put_u32( out, layer.fan_in );
    put_u32( out, layer.fan_out );
    put_u32( out, static_cast<uint32_t>( layer.act ) );
    put_doubles( out, layer.weights );
    put_doubles( out, layer.bias );
  }
  put_u64( out, state.step );
  for ( size_t l = 0; l < net.layers.size(); ++l )
  {
    put_doubles( out, state.m_weights[l] );
    put_doubles( out, state.v_weights[l] );
    put_doubles( out, state.m_bias[l] );
    put_doubles( out, state.v_bias[l] );
  }
}

bool load_checkpoint( mlp& net, adam_state& state, const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    return false;
  }
  char magic[8];
  if ( !in.read( magic, sizeof magic ) || std::memcmp( magic, checkpoint_magic, sizeof magic ) != 0 )
  {
    return false;
  }
  uint32_t version = 0, layer_count = 0;
  if ( !get_u32( in, version ) || version != checkpoint_version || !get_u32( in, layer_count ) ||
       layer_count != net.layers.size() )
  {
    return false;
  }
  mlp loaded = net;
  for ( auto& layer : loaded.layers )
  {
    uint32_t fi = 0, fo = 0, act = 0;
    if ( !get_u32( in, fi ) || !get_u32( in, fo ) || !get_u32( in, act ) || fi != layer.fan_in ||
         fo != layer.fan_out || act != static_cast<uint32_t>( layer.act ) )
    {
      return false;
    }
    if ( !get_doubles( in, layer.weights, layer.weights.size() ) ||
         !get_doubles( in, layer.bias, layer.bias.size() ) )
    {
      return false;
    }
  }
  adam_state loaded_state = adam_state::zeros_like( net );
  if ( !get_u64( in, loaded_state.step ) )
  {
    return false;
  }
  for ( size_t l = 0; l < net.layers.size(); ++l )
  {
    if ( !get_doubles( in, loaded_state.m_weights[l], net.layers[l].weights.size() ) ||
         !get_doubles( in, loaded_state.v_weights[l], net.layers[l].weights.size() ) ||
         !get_doubles( in, loaded_state.m_bias[l], net.layers[l].bias.size() ) ||
         !get_doubles( in, loaded_state.v_bias[l], net.layers[l].bias.size() ) )
    {
      return false;
    }
  }
  net = std::move( loaded );
  state = std::move( loaded_state );
  return true;
}

} // namespace aigopt
