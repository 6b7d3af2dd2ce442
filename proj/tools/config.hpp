#pragma once
// Instance configuration: a line-oriented sectioned text format.
//
//   # comment
//   [tower]
//   quadratic i -1            # x^2 = -1 over the previous level
//   pure r 4 (2)              # x^4 = 2, constant given over the previous level
//   example biquaternion      # or: take tower, data and theta of a built-in example
//   [automorphisms]
//   sigma1 signs 1 -1 1       # generator j -> s_j * generator j
//   tau scale (1) (0,1)       # generator j -> factor_j * generator j
//   phi images (0,1) (1)      # explicit generator images
//   [crossed-product]
//   example                   # the data of the example named in [tower]
//   generators sigma1 sigma2
//   orders 2 2
//   grade-rank 2
//   u 1 2 (0,1)               # also sets u_21 to the inverse
//   b 1 (0,0,0,0,1/3) @ 0 -1  # coefficient times x^(0,-1)
//   [involution]
//   theta tau
//   [module]
//   group dihedral 4          # or: group abelian 2 2
//   regular 2                 # or: trivial 4 2 | permutation 2 <elements> | random 256
//   moduli 4 2                # explicit module: moduli then one action per generator
//   action 1 1 0 ; 0 1
//   twist
//   image 1 0
//   [multiply]
//   a (1) @ 0 0 z 1 0         # term: coefficient, x-exponent, z-index; lines add up
//   b (0,1) z 0 1
//   [pipeline]
//   validate
//   [bounds]
//   degree 8
//
// Field elements are rationals (3/2), generator names, or coefficient tuples
// in the flattened power basis, zero-padded.

#include "xprod/examples.hpp"
#include "xprod/tate.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace xprod::cli {

struct ConfigError : std::runtime_error {
    ConfigError(int line, const std::string& msg)
        : std::runtime_error("config:" + std::to_string(line) + ": " + msg), line(line), detail(msg) {}
    int line;
    std::string detail;
};

struct Term {
    FieldElement coeff;
    Exponent exponent;
    std::vector<int> index;
};

struct Config {
    TowerPtr tower;
    std::map<std::string, FieldAutomorphism> automorphisms;
    std::optional<ExampleAlgebra> example;
    std::optional<CrossedProductData> data;
    std::optional<FieldAutomorphism> theta;
    std::optional<FiniteGModule> module;
    std::vector<Coords> images;
    std::vector<Term> a, b;
    std::vector<std::string> pipeline;
    int degree_bound = 8;
};

// seed drives "random" module constructions
Config parse_config(const std::string& text, std::uint64_t seed);
Config load_config(const std::string& path, std::uint64_t seed);

// throws PreconditionError on malformed literals
FieldElement parse_element(const TowerPtr& tower, const std::string& token);

}  // namespace xprod::cli
