#pragma once
// Values produced by the oracles in this directory, frozen for the tests.
// tv_bruteforce.py is re-run by ctest (oracle_frozen_values) to keep them in sync.

namespace oracle::frozen {

// brute-force Turaev-Viro sum on the boundary of the 4-simplex
constexpr double kFibonacciS3 = 0.27639320225002095;
constexpr double kVecZ2S3 = 0.5;
constexpr double kVecZ3S3 = 0.3333333333333333;

}  // namespace oracle::frozen
