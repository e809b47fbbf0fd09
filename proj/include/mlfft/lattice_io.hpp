#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlfft/construct.hpp"
#include "mlfft/lattice.hpp"

namespace mlfft {

struct LatticeDocument {
    int d = 0;
    std::string index_set_hash;
    std::vector<Rank1Lattice> components;
    std::uint64_t seed = 0;
    double c = 0;
    double delta = 0;
};

std::string lattice_to_json(const LatticeDocument& doc);
LatticeDocument lattice_from_json(const std::string& text);  // throws ParseError
std::string report_to_json(const ConstructionReport& rep);

}  // namespace mlfft
