#pragma once

// Structural generators for small arithmetic benchmark circuits.

#include <string>
#include <vector>

#include "aigopt/aig.hpp"

namespace aigopt {

aig make_adder( uint32_t bits );          //!< two n-bit operands -> n+1-bit sum
aig make_multiplier( uint32_t bits );     //!< n x n -> 2n-bit product
aig make_square( uint32_t bits );         //!< n -> 2n-bit square
aig make_barrel_shifter( uint32_t bits ); //!< n-bit rotate left by log2(n)-bit amount
aig make_max( uint32_t bits );            //!< two n-bit operands -> n-bit maximum
aig make_divider( uint32_t bits );        //!< n / n -> n-bit quotient and remainder

struct bench_spec {
  std::string name;
  aig design;
};

/*! \brief The desk-scale benchmark suite (every design has at most 16 inputs,
 * so exhaustive equivalence checking stays available). */
std::vector<bench_spec> desk_benchmarks();

} // namespace aigopt
