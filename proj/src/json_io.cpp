#include "pntomo/json_io.hpp"

#include <fstream>

namespace pntomo {

namespace {

const Json& require_field(const Json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end()) throw SchemaError(std::string("missing field \"") + name + "\"");
    return *it;
}

Eigen::VectorXd parse_vector(const Json& arr, const char* name, Eigen::Index expected) {
    if (!arr.is_array())
        throw SchemaError(std::string("\"") + name + "\" must be an array of numbers");
    if (static_cast<Eigen::Index>(arr.size()) != expected)
        throw SchemaError(std::string("\"") + name + "\" must have " + std::to_string(expected) +
                          " entries");
    Eigen::VectorXd v(expected);
    for (Eigen::Index i = 0; i < expected; ++i) {
        if (!arr[static_cast<std::size_t>(i)].is_number())
            throw SchemaError(std::string("\"") + name + "\" entries must be numbers");
        v(i) = arr[static_cast<std::size_t>(i)].get<double>();
    }
    return v;
}

}  // namespace

GaussianState state_from_json(const Json& doc) {
    if (!doc.is_object()) throw SchemaError("state document must be a JSON object");
    const Json& jmodes = require_field(doc, "modes");
    if (!jmodes.is_number_integer() || jmodes.get<int>() < 1)
        throw SchemaError("\"modes\" must be a positive integer");
    const int modes = jmodes.get<int>();

    const Eigen::VectorXd mean_q = parse_vector(require_field(doc, "mean_q"), "mean_q", modes);
    const Eigen::VectorXd mean_p = parse_vector(require_field(doc, "mean_p"), "mean_p", modes);

    const Json& jsig = require_field(doc, "sigma");
    if (!jsig.is_array() || static_cast<int>(jsig.size()) != 2 * modes)
        throw SchemaError("\"sigma\" must be 2N x 2N");
    Eigen::MatrixXd sig(2 * modes, 2 * modes);
    for (int i = 0; i < 2 * modes; ++i) {
        const Json& row = jsig[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != 2 * modes)
            throw SchemaError("\"sigma\" must be 2N x 2N");
        for (int j = 0; j < 2 * modes; ++j) {
            if (!row[static_cast<std::size_t>(j)].is_number())
                throw SchemaError("\"sigma\" entries must be numbers");
            sig(i, j) = row[static_cast<std::size_t>(j)].get<double>();
        }
    }
    const double asym = (sig - sig.transpose().eval()).cwiseAbs().maxCoeff();
    if (asym > 1e-9) throw SchemaError("\"sigma\" must be symmetric");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        if (key != "modes" && key != "mean_q" && key != "mean_p" && key != "sigma" &&
            key != "label")
            throw SchemaError("unknown field \"" + key + "\"");
    }
    try {
        return GaussianState(mean_p, mean_q, RealSymMatrix(sig));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("\"sigma\" rejected: ") + e.what());
    }
}

GaussianState load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open state file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    return state_from_json(doc);
}

Json state_to_json(const GaussianState& state, const std::string& label) {
    Json doc;
    doc["modes"] = state.modes();
    doc["mean_q"] = std::vector<double>(state.mean_q.data(), state.mean_q.data() + state.mean_q.size());
    doc["mean_p"] = std::vector<double>(state.mean_p.data(), state.mean_p.data() + state.mean_p.size());
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < state.sigma.dim(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < state.sigma.dim(); ++j) row.push_back(state.sigma(i, j));
        rows.push_back(std::move(row));
    }
    doc["sigma"] = std::move(rows);
    if (!label.empty()) doc["label"] = label;
    return doc;
}

Json validity_report_to_json(const ValidityReport& report) {
    Json doc;
    doc["per_mode_det"] = std::vector<double>(report.per_mode_det.data(),
                                              report.per_mode_det.data() + report.per_mode_det.size());
    doc["full_det"] = report.full_det;
    doc["passes_per_mode"] = report.passes_per_mode;
    doc["passes_full"] = report.passes_full;
    doc["verdict"] = report.verdict == Verdict::Valid ? "Valid" : "NecessaryFailed";
    return doc;
}

Json complex_to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json positivity_report_to_json(const PositivityReport& report) {
    Json doc;
    if (report.uncertainty_checks)
        doc["uncertainty_checks"] = validity_report_to_json(*report.uncertainty_checks);
    Json witnesses = Json::array();
    for (const auto& w : report.negative_witnesses) {
        Json jw;
        jw["n"] = w.n;
        Json alphas = Json::array();
        for (Eigen::Index k = 0; k < w.alpha.size(); ++k) alphas.push_back(complex_to_json(w.alpha(k)));
        jw["alpha"] = std::move(alphas);
        jw["omega"] = w.omega;
        witnesses.push_back(std::move(jw));
    }
    doc["negative_witnesses"] = std::move(witnesses);
    doc["scan_spec"] = report.scan_spec;
    doc["verdict"] = report.verdict == ScanVerdict::PassedAllScans ? "PassedAllScans"
                                                                   : "NegativeWitnessFound";
    doc["overall_positive"] = report.overall_positive;
    if (!report.first_failure.empty()) doc["first_failure"] = report.first_failure;
    return doc;
}

Json fock_matrix_to_json(const FockMatrix& rho) {
    Json doc;
    doc["modes"] = rho.modes;
    doc["cutoff"] = rho.cutoff;
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < rho.dim(); ++j) row.push_back(complex_to_json(rho.mat(i, j)));
        rows.push_back(std::move(row));
    }
    doc["rho"] = std::move(rows);
    return doc;
}

}  // namespace pntomo
