#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "los/rational.hpp"

namespace lostool {

// Insertion-ordered JSON keeps payloads byte-identical across runs.
using Json = nlohmann::ordered_json;

// Envelope around every command's output: the payload is deterministic, the
// elapsed field lives outside it so reruns can be diffed on payload alone.
struct RunReport {
    std::string command;
    Json parameters = Json::object();
    std::string verdict;  // "verified" | "violation" | "error"
    Json payload = Json::object();
    std::int64_t elapsed_ms = 0;

    Json to_json() const;
};

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

inline Json fraction(const los::Rational& q) { return los::to_fraction_string(q); }

}  // namespace lostool
