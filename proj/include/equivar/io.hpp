#pragma once

#include <iosfwd>
#include <string>

#include "equivar/mirror.hpp"

namespace equivar {

/// Parsed CLI input document: polytope vertices plus affine generators.
struct InputDocument {
    int dim = 0;
    std::vector<IntVec> vertices;
    std::vector<GroupElement> generators;
    std::vector<std::string> labels;
};

InputDocument parse_input(const std::string& jsonText);
InputDocument load_input(const std::string& path);
std::string input_to_json(const InputDocument& doc);

struct Problem {
    LatticePolytope P;
    std::shared_ptr<const FiniteGroup> group;
    std::vector<std::string> labels;
};

Problem build_problem(const InputDocument& doc);

/// Full command dispatch; renders the report to `out` (nothing is written
/// on failure) and returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace equivar
