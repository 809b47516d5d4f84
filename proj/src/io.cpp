#include "qcoh/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qcoh {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<Complex> parse_complex_list(const json& j, const std::string& what) {
    if (!j.is_array()) {
        throw std::invalid_argument(what + " must be an array of [re, im] pairs");
    }
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (e.is_number()) {
            out.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw std::invalid_argument(what + " entries must be [re, im] pairs");
        }
    }
    return out;
}

} // namespace

StateFile read_state_file(const std::string& path) {
    const json j = load_json(path);
    if (!j.contains("dim") || !j.contains("kind") || !j.contains("data")) {
        throw std::invalid_argument(path + ": state file needs dim, kind, data");
    }
    const int d = j["dim"].get<int>();
    const std::string kind = j["kind"].get<std::string>();
    const auto data = parse_complex_list(j["data"], "data");

    if (kind == "pure") {
        if (static_cast<int>(data.size()) != d) {
            throw std::invalid_argument(path + ": pure state wants dim entries");
        }
        Vector v(d);
        for (int i = 0; i < d; ++i) v(i) = data[i];
        return PureState(std::move(v));
    }
    if (kind == "mixed") {
        if (static_cast<int>(data.size()) != d * d) {
            throw std::invalid_argument(path + ": mixed state wants dim^2 entries (row-major)");
        }
        Matrix m(d, d);
        for (int i = 0; i < d; ++i) {
            for (int k = 0; k < d; ++k) m(i, k) = data[i * d + k];
        }
        return DensityMatrix(std::move(m));
    }
    throw std::invalid_argument(path + ": kind must be \"pure\" or \"mixed\"");
}

namespace {

void write_state_json(const std::string& path, int dim, const std::string& kind,
                      const std::vector<Complex>& data) {
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot write " + path);
    }
    out << "{\"dim\": " << dim << ", \"kind\": \"" << kind << "\", \"data\": [";
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (i) out << ", ";
        out << "[" << fmt17(data[i].real()) << ", " << fmt17(data[i].imag()) << "]";
    }
    out << "]}\n";
}

} // namespace

void write_state_file(const std::string& path, const PureState& psi) {
    std::vector<Complex> data(psi.amp.data(), psi.amp.data() + psi.dim());
    write_state_json(path, psi.dim(), "pure", data);
}

void write_state_file(const std::string& path, const DensityMatrix& rho) {
    const int d = rho.dim();
    std::vector<Complex> data;
    data.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) data.push_back(rho.rho(i, j));
    }
    write_state_json(path, d, "mixed", data);
}

MultiSlitConfig read_multislit_config(const std::string& path) {
    const json j = load_json(path);
    if (!j.contains("slits") || !j.contains("phi") || !j.contains("p") || !j.contains("q")) {
        throw std::invalid_argument(path + ": config needs slits, phi, p, q");
    }
    const int d = j["slits"].get<int>();

    const auto phi = parse_complex_list(j["phi"], "phi");
    if (static_cast<int>(phi.size()) != d) {
        throw std::invalid_argument(path + ": phi must have one entry per slit");
    }
    std::vector<double> p = j["p"].get<std::vector<double>>();
    const int n_fail = static_cast<int>(p.size());

    if (!j["q"].is_array() || static_cast<int>(j["q"].size()) != n_fail) {
        throw std::invalid_argument(path + ": q must have one row per failure direction");
    }
    Matrix q(n_fail, d);
    for (int a = 0; a < n_fail; ++a) {
        const auto row = parse_complex_list(j["q"][a], "q row");
        if (static_cast<int>(row.size()) != d) {
            throw std::invalid_argument(path + ": q rows must have one entry per slit");
        }
        for (int i = 0; i < d; ++i) q(a, i) = row[i];
    }

    const bool has_lambda = j.contains("lambda");
    const bool has_chi = j.contains("chi");
    if (has_lambda != has_chi) {
        throw std::invalid_argument(path + ": lambda and chi must appear together");
    }

    QuantonSpec quanton = [&] {
        if (has_lambda) {
            if (j.contains("c")) {
                throw std::invalid_argument(path + ": give either c or lambda/chi, not both");
            }
            std::vector<double> lambda = j["lambda"].get<std::vector<double>>();
            const int n_mix = static_cast<int>(lambda.size());
            if (!j["chi"].is_array() || static_cast<int>(j["chi"].size()) != n_mix) {
                throw std::invalid_argument(path + ": chi must have one row per lambda");
            }
            Matrix chi(n_mix, d);
            for (int x = 0; x < n_mix; ++x) {
                const auto row = parse_complex_list(j["chi"][x], "chi row");
                if (static_cast<int>(row.size()) != d) {
                    throw std::invalid_argument(path + ": chi rows must have one entry per slit");
                }
                for (int i = 0; i < d; ++i) chi(x, i) = row[i];
            }
            return QuantonSpec::mixed(std::move(lambda), std::move(chi));
        }
        if (!j.contains("c")) {
            throw std::invalid_argument(path + ": config needs c (pure) or lambda/chi (mixed)");
        }
        auto c = parse_complex_list(j["c"], "c");
        if (static_cast<int>(c.size()) != d) {
            throw std::invalid_argument(path + ": c must have one entry per slit");
        }
        return QuantonSpec::pure(std::move(c));
    }();

    return {std::move(quanton), DetectorModel::build(phi, std::move(p), std::move(q))};
}

} // namespace qcoh
