#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "hypex/homotopy.hpp"
#include "hypex/expvariety.hpp"
#include "json.hpp"

namespace hypex::cli {

using json = nlohmann::json;

std::uint64_t fnv1a(const std::string& bytes);

struct Manifest {
    std::string command;
    std::vector<std::string> argv;
    std::vector<std::uint64_t> seeds;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

/// Wraps a result with its manifest; the digest covers the result only.
json finish(const Manifest& m, json result);
json error_json(const Manifest& m, const std::string& kind, const std::string& message);

json to_json(const Rational& q);
json to_json(const QVec& v);
json to_json(const CVec& v);
json to_json(const SolutionSet& s);

/// {"rows": [[...], ...]} or {"equations": [[...], ...]}; entries are numbers or rational strings.
Subspace read_subspace(const std::string& path);
QMat matrix_from_json(const json& rows);
/// {"nvars": n, "polys": ["1:2,0 + ...", ...]}; homogeneous unless "affine": true.
SquareSystem read_system(const std::string& path);

}  // namespace hypex::cli
