#include "genfock/json_io.hpp"

#include <cmath>
#include <fstream>

namespace genfock {

nlohmann::json coeffseq_to_json(const CoeffSeq& f) {
    nlohmann::json j;
    j["truncation"] = f.truncation();
    nlohmann::json arr = nlohmann::json::array();
    for (const Complex& c : f.coeffs) arr.push_back({c.real(), c.imag()});
    j["coeffs"] = std::move(arr);
    return j;
}

CoeffSeq coeffseq_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("truncation") || !j.contains("coeffs"))
        throw std::invalid_argument("CoeffSeq JSON: need {truncation, coeffs}");
    if (!j["truncation"].is_number_integer())
        throw std::invalid_argument("CoeffSeq JSON: truncation must be an integer");
    const int N = j["truncation"].get<int>();
    if (N < 0) throw std::invalid_argument("CoeffSeq JSON: truncation must be >= 0");
    const auto& arr = j["coeffs"];
    if (!arr.is_array() || static_cast<int>(arr.size()) != N + 1)
        throw std::invalid_argument("CoeffSeq JSON: coeffs length must be truncation + 1");
    std::vector<Complex> coeffs;
    coeffs.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw std::invalid_argument("CoeffSeq JSON: each coefficient must be [re, im]");
        const double re = e[0].get<double>();
        const double im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw std::invalid_argument("CoeffSeq JSON: coefficients must be finite");
        coeffs.emplace_back(re, im);
    }
    return CoeffSeq(std::move(coeffs));
}

CoeffSeq load_coeffseq(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return coeffseq_from_json(j);
}

void save_coeffseq(const std::string& path, const CoeffSeq& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << coeffseq_to_json(f).dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

nlohmann::json complex_to_json(Complex z) { return {z.real(), z.imag()}; }

}  // namespace genfock
