#pragma once

#include <cstdint>
#include <random>

namespace aigopt {

/*! \brief Deterministic random source; the uniform mapping is fixed here so
 * streams are reproducible bit-for-bit across platforms. */
class rng64 {
public:
  explicit rng64( uint64_t seed ) : engine_( seed ) {}

  uint64_t next() { return engine_(); }

  /*! \brief Uniform in [0, 1). */
  double uniform() { return static_cast<double>( next() >> 11 ) * 0x1.0p-53; }

  double uniform( double lo, double hi ) { return lo + ( hi - lo ) * uniform(); }

  /*! \brief Uniform integer in [0, n). */
  uint64_t below( uint64_t n ) { return static_cast<uint64_t>( uniform() * static_cast<double>( n ) ); }

private:
  std::mt19937_64 engine_;
};

} // namespace aigopt
