#pragma once

#include "holo/granger.hpp"
#include "holo/laurent.hpp"
#include "holo/pencil.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace holo {

using Json = nlohmann::ordered_json;

/// Entry is a bare number (real) or [re, im].
Complex parse_complex(const Json& j, const std::string& where);
Json complex_to_json(Complex z);

/// Row-major array of arrays. Throws InvalidInput on ragged or mis-sized input;
/// rows/cols < 0 means "take from the data".
Mat parse_matrix(const Json& j, const std::string& where, Index rows = -1, Index cols = -1);
/// Rows of [re, im] entries, always complex.
Json matrix_to_json(const Mat& m);
Json vector_to_json(const Vec& v);

/// {"center": [re, im], "dim": n, "coefficients": [A_0, A_1, ...]}
TaylorPencil parse_pencil_doc(const Json& j);
Json pencil_to_json(const TaylorPencil& p);

struct ModelDoc {
  ARModel model;
  std::optional<NoiseSpec> noise;
};

/// {"dim": n, "ar": [Phi_1, ...], "noise": {"covariance": C, "seed": s}}; noise is optional.
ModelDoc parse_model_doc(const Json& j);

/// {"center": [re, im], "m": m, "J": J, "N": {"-m": N_{-m}, ..., "J": N_J}}
Json expansion_to_json(const LaurentExpansion& e);
LaurentExpansion parse_expansion(const Json& j);

/// Reads and parses a JSON file; InvalidInput on I/O or syntax errors.
Json read_json_file(const std::string& path);

}  // namespace holo
