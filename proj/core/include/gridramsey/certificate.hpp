#pragma once

#include "gridramsey/grid.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gridramsey {

using Json = nlohmann::ordered_json;

enum class Verdict { kGuaranteed, kColorable, kUnknown };

std::string to_string(Verdict verdict);
Verdict verdict_from_string(const std::string& text);

/// Machine-checkable witness that a grid is guaranteed (method plus
/// parameters and sub-certificates) or colorable (explicit coloring).
///
/// Methods: exhaustive, pigeonhole, epsilon, gamma, delta, hereditary,
/// product, product-composition, dominance. Colorable certificates carry
/// a witness coloring and are re-checkable by counting.
struct Certificate {
    Verdict verdict = Verdict::kUnknown;
    std::string method;
    Int colors = 0;
    std::optional<Grid> grid;
    Json params = Json::object();
    std::vector<Certificate> sub_certificates;
    std::shared_ptr<const Coloring> witness;  // colorable only
    std::string witness_file;                 // set when the witness lives on disk

    Json to_json() const;
    static Certificate from_json(const Json& j);
};

Certificate make_colorable_certificate(const Int& colors, Coloring witness,
                                       const std::string& method = "exhaustive");
Certificate make_unknown_certificate(const Int& colors, const Grid& grid,
                                     const std::string& reason);

/// Re-validation of everything a certificate claims that can be checked
/// locally: witness colorings must be box-free and match the stated grid
/// and color count; recorded method parameters must be consistent.
/// Exhaustive "guaranteed" verdicts are vouched for by the search run that
/// produced them and are only checked for structural consistency here.
bool verify_certificate(const Certificate& cert, std::string* why = nullptr);

}  // namespace gridramsey
