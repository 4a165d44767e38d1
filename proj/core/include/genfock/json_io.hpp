#pragma once

#include <string>

#include <json.hpp>

#include "genfock/coeffspace.hpp"

namespace genfock {

/// Wire format shared by every module and the CLI:
///   {"truncation": N, "coeffs": [[re, im], ...]}   with N+1 entries.
nlohmann::json coeffseq_to_json(const CoeffSeq& f);

/// Throws std::invalid_argument on schema violations (wrong length,
/// non-finite entries, missing fields).
CoeffSeq coeffseq_from_json(const nlohmann::json& j);

CoeffSeq load_coeffseq(const std::string& path);        // throws std::runtime_error on I/O
void save_coeffseq(const std::string& path, const CoeffSeq& f);

nlohmann::json complex_to_json(Complex z);

}  // namespace genfock
