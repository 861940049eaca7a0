#include "gridramsey/certificate.hpp"

#include "gridramsey/coloring_io.hpp"

namespace gridramsey {

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::kGuaranteed: return "guaranteed";
        case Verdict::kColorable: return "colorable";
        case Verdict::kUnknown: return "unknown";
    }
    return "unknown";
}

Verdict verdict_from_string(const std::string& text) {
    if (text == "guaranteed") return Verdict::kGuaranteed;
    if (text == "colorable") return Verdict::kColorable;
    if (text == "unknown") return Verdict::kUnknown;
    throw std::invalid_argument("bad verdict: " + text);
}

Json Certificate::to_json() const {
    Json j;
    j["verdict"] = to_string(verdict);
    j["method"] = method;
    Json p = params;
    p["c"] = colors.str();
    if (grid) p["grid"] = grid->to_string();
    j["params"] = std::move(p);
    j["sub_certificates"] = Json::array();
    for (const Certificate& sub : sub_certificates) j["sub_certificates"].push_back(sub.to_json());
    if (!witness_file.empty()) {
        j["witness_file"] = witness_file;
    } else if (witness) {
        j["witness"] = serialize_coloring(*witness);
    }
    return j;
}

Certificate Certificate::from_json(const Json& j) {
    Certificate cert;
    cert.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    cert.method = j.at("method").get<std::string>();
    cert.params = j.value("params", Json::object());
    if (cert.params.contains("c")) cert.colors = Int(cert.params["c"].get<std::string>());
    if (cert.params.contains("grid"))
        cert.grid = Grid::parse(cert.params["grid"].get<std::string>());
    for (const Json& sub : j.value("sub_certificates", Json::array()))
        cert.sub_certificates.push_back(Certificate::from_json(sub));
    if (j.contains("witness_file")) cert.witness_file = j["witness_file"].get<std::string>();
    if (j.contains("witness"))
        cert.witness = std::make_shared<Coloring>(parse_coloring(j["witness"].get<std::string>()));
    return cert;
}

Certificate make_colorable_certificate(const Int& colors, Coloring witness,
                                       const std::string& method) {
    Certificate cert;
    cert.verdict = Verdict::kColorable;
    cert.method = method;
    cert.colors = colors;
    cert.grid = witness.grid();
    cert.witness = std::make_shared<Coloring>(std::move(witness));
    return cert;
}

Certificate make_unknown_certificate(const Int& colors, const Grid& grid,
                                     const std::string& reason) {
    Certificate cert;
    cert.verdict = Verdict::kUnknown;
    cert.method = "exhaustive";
    cert.colors = colors;
    cert.grid = grid;
    cert.params["reason"] = reason;
    return cert;
}

namespace {

bool fail(std::string* why, const std::string& message) {
    if (why) *why = message;
    return false;
}

}  // namespace

bool verify_certificate(const Certificate& cert, std::string* why) {
    if (cert.verdict == Verdict::kColorable) {
        const Coloring* witness = cert.witness.get();
        std::optional<Coloring> loaded;
        if (!witness && !cert.witness_file.empty()) {
            loaded = load_coloring_file(cert.witness_file);
            witness = &*loaded;
        }
        if (!witness) return fail(why, "colorable certificate has no witness");
        if (cert.grid && !(witness->grid() == *cert.grid))
            return fail(why, "witness grid does not match certificate grid");
        if (Int(witness->colors()) > cert.colors)
            return fail(why, "witness uses more colors than certified");
        if (count_monochromatic_boxes(*witness) != 0)
            return fail(why, "witness coloring contains a monochromatic box");
    }
    if (cert.verdict == Verdict::kGuaranteed) {
        if (cert.method.empty()) return fail(why, "guaranteed certificate lacks a method");
        if (cert.method == "pigeonhole") {
            if (!cert.grid || cert.grid->dimension() != 1)
                return fail(why, "pigeonhole certificate requires a 1-D grid");
            if (cert.grid->dim(0) <= cert.colors)
                return fail(why, "pigeonhole certificate needs side > colors");
        }
    }
    for (const Certificate& sub : cert.sub_certificates) {
        if (!verify_certificate(sub, why)) return false;
    }
    return true;
}

}  // namespace gridramsey
