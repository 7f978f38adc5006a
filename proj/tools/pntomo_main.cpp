#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "pntomo/json_io.hpp"
#include "pntomo/reconstruction.hpp"
#include "pntomo/version.hpp"

namespace pntomo::cli {

using std::complex;

// exit codes: 0 ok, 1 input error, 2 computation rejected, 3 negativity witness
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitRejected = 2;
constexpr int kExitWitness = 3;

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

complex<double> parse_complex(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) throw SchemaError("empty complex literal");
    if (s == "i" || s == "+i") return {0.0, 1.0};
    if (s == "-i") return {0.0, -1.0};
    const char* c = s.c_str();
    char* end = nullptr;
    double first = std::strtod(c, &end);
    if (end == c) throw SchemaError("cannot parse complex literal \"" + s + "\"");
    if (*end == '\0') return {first, 0.0};
    if (*end == 'i' && *(end + 1) == '\0') return {0.0, first};
    if (*end == '+' || *end == '-') {
        if (*(end + 1) == 'i' && *(end + 2) == '\0') return {first, *end == '+' ? 1.0 : -1.0};
        char* end2 = nullptr;
        double second = std::strtod(end, &end2);
        if (end2 != end && *end2 == 'i' && *(end2 + 1) == '\0') return {first, second};
    }
    throw SchemaError("cannot parse complex literal \"" + s + "\"");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

/// Per-mode photon numbers: specs separated by ';', each a comma list of
/// integers and "a..b" ranges. A single spec replicates across modes.
std::vector<MultiIndex> parse_n_spec(const std::string& spec, int modes) {
    auto mode_specs = split(spec, ';');
    if (static_cast<int>(mode_specs.size()) == 1 && modes > 1)
        mode_specs.assign(static_cast<std::size_t>(modes), mode_specs[0]);
    if (static_cast<int>(mode_specs.size()) != modes)
        throw SchemaError("--n needs one spec per mode (';' separated)");
    std::vector<std::vector<int>> per_mode;
    for (const auto& ms : mode_specs) {
        std::vector<int> vals;
        for (const auto& item : split(ms, ',')) {
            const auto dots = item.find("..");
            try {
                if (dots != std::string::npos) {
                    const int a = std::stoi(item.substr(0, dots));
                    const int b = std::stoi(item.substr(dots + 2));
                    if (a < 0 || b < a) throw SchemaError("bad photon-number range \"" + item + "\"");
                    for (int v = a; v <= b; ++v) vals.push_back(v);
                } else {
                    const int v = std::stoi(item);
                    if (v < 0) throw SchemaError("negative photon number in --n");
                    vals.push_back(v);
                }
            } catch (const std::invalid_argument&) {
                throw SchemaError("cannot parse --n item \"" + item + "\"");
            }
        }
        per_mode.push_back(std::move(vals));
    }
    std::vector<MultiIndex> out;
    MultiIndex idx(static_cast<std::size_t>(modes));
    std::vector<std::size_t> pos(static_cast<std::size_t>(modes), 0);
    for (;;) {
        for (int k = 0; k < modes; ++k)
            idx[static_cast<std::size_t>(k)] = per_mode[static_cast<std::size_t>(k)][pos[static_cast<std::size_t>(k)]];
        out.push_back(idx);
        int k = modes - 1;
        for (; k >= 0; --k) {
            if (++pos[static_cast<std::size_t>(k)] < per_mode[static_cast<std::size_t>(k)].size()) break;
            pos[static_cast<std::size_t>(k)] = 0;
        }
        if (k < 0) break;
    }
    return out;
}

struct AlphaPoint {
    DisplacementVector alpha;
    std::optional<double> weight;  // polar quadrature weight, when applicable
};

/// Alpha scan points. Forms:
///   comma list of complex literals, per-mode values ';'-separated per item
///   "grid:remin:remax:nre:immin:immax:nim"   (one mode)
///   "polar:radius:nradial:nangular"          (one mode, reconstruction nodes)
std::vector<AlphaPoint> parse_alpha_spec(const std::string& spec, int modes,
                                         complex<double> polar_center) {
    std::vector<AlphaPoint> out;
    if (spec.rfind("grid:", 0) == 0) {
        if (modes != 1) throw SchemaError("--alpha grid form supports one mode");
        auto parts = split(spec.substr(5), ':');
        if (parts.size() != 6)
            throw SchemaError("--alpha grid needs remin:remax:nre:immin:immax:nim");
        const double remin = std::stod(parts[0]), remax = std::stod(parts[1]);
        const int nre = std::stoi(parts[2]);
        const double immin = std::stod(parts[3]), immax = std::stod(parts[4]);
        const int nim = std::stoi(parts[5]);
        if (nre < 1 || nim < 1) throw SchemaError("--alpha grid node counts must be positive");
        for (int i = 0; i < nre; ++i) {
            const double re = nre == 1 ? remin : remin + (remax - remin) * i / (nre - 1);
            for (int j = 0; j < nim; ++j) {
                const double im = nim == 1 ? immin : immin + (immax - immin) * j / (nim - 1);
                DisplacementVector a(1);
                a(0) = {re, im};
                out.push_back({a, std::nullopt});
            }
        }
        return out;
    }
    if (spec.rfind("polar:", 0) == 0) {
        if (modes != 1) throw SchemaError("--alpha polar form supports one mode");
        auto parts = split(spec.substr(6), ':');
        if (parts.size() != 3) throw SchemaError("--alpha polar needs radius:nradial:nangular");
        const double radius = std::stod(parts[0]);
        const int nr = std::stoi(parts[1]);
        const int na = std::stoi(parts[2]);
        if (radius <= 0 || nr < 1 || na < 1)
            throw SchemaError("--alpha polar parameters must be positive");
        const auto [nodes, weights] = gauss_legendre_01(nr);
        const double dphi = 2.0 * std::numbers::pi / na;
        for (int i = 0; i < nr; ++i) {
            const double rho = nodes[static_cast<std::size_t>(i)] * radius;
            const double wr = weights[static_cast<std::size_t>(i)] * radius * rho;
            for (int j = 0; j < na; ++j) {
                DisplacementVector a(1);
                a(0) = polar_center + std::polar(rho, dphi * j);
                out.push_back({a, wr * dphi / std::numbers::pi});
            }
        }
        return out;
    }
    for (const auto& item : split(spec, ',')) {
        auto mode_vals = split(item, ';');
        if (static_cast<int>(mode_vals.size()) == 1 && modes > 1)
            mode_vals.assign(static_cast<std::size_t>(modes), mode_vals[0]);
        if (static_cast<int>(mode_vals.size()) != modes)
            throw SchemaError("--alpha item needs one value per mode (';' separated)");
        DisplacementVector a(modes);
        for (int k = 0; k < modes; ++k) a(k) = parse_complex(mode_vals[static_cast<std::size_t>(k)]);
        out.push_back({a, std::nullopt});
    }
    return out;
}

Json make_manifest(const std::string& command, Json parameters, const WarningLog& warnings) {
    Json m;
    m["command"] = command;
    m["parameters"] = std::move(parameters);
    m["tool_version"] = kVersion;
    Json w = Json::array();
    for (const auto& e : warnings.entries) w.push_back(e.code + ": " + e.message);
    m["warnings"] = std::move(w);
    return m;
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw SchemaError("cannot write output file: " + out_path);
    f << text;
}

void emit_json(const Json& doc, const std::string& out_path) {
    write_text(out_path, doc.dump(2) + "\n");
}

/// CSV gets its manifest as a sidecar file (when writing to a file) or on stderr.
void emit_csv(const std::string& body, const Json& manifest, const std::string& out_path) {
    write_text(out_path, body);
    if (!out_path.empty()) {
        std::ofstream f(out_path + ".manifest.json", std::ios::binary);
        f << manifest.dump(2) << "\n";
    } else {
        std::cerr << manifest.dump(2) << "\n";
    }
}

// ---------------------------------------------------------------------------

/// Fock-basis reference for states with a recognizable covariance; empty when
/// no closed-form Fock representation applies.
std::optional<FockMatrix> fock_reference(const GaussianState& state, int cutoff,
                                         WarningLog* warnings) {
    if (state.modes() != 1) return std::nullopt;
    const double spp = state.sig_pp(0, 0), sqq = state.sig_qq(0, 0), spq = state.sig_pq(0, 0);
    const complex<double> gamma =
        complex<double>(state.mean_q(0), state.mean_p(0)) / std::sqrt(2.0);
    if (std::abs(spp - 0.5) < 1e-12 && std::abs(sqq - 0.5) < 1e-12 && std::abs(spq) < 1e-12)
        return coherent_density(gamma, cutoff, warnings);
    if (std::abs(spp - sqq) < 1e-12 && std::abs(spq) < 1e-12 && std::abs(gamma) < 1e-12)
        return thermal_density(spp - 0.5, cutoff);
    const double det = spp * sqq - spq * spq;
    if (std::abs(det - 0.25) < 1e-10) {
        const SqueezeParams sq = squeeze_params_from_sigma(state.sigma);
        return displaced_squeezed_density(sq.r, sq.theta, gamma, cutoff, warnings);
    }
    return std::nullopt;
}

struct TomogramArgs {
    std::string state_file;
    std::string n_spec = "0..4";
    std::string alpha_spec = "0";
    std::string format = "json";
    std::string oracle = "none";
    std::string out_path;
    bool with_weights = false;
};

int cmd_tomogram(const TomogramArgs& args) {
    const GaussianState state = load_state_file(args.state_file);
    const int modes = state.modes();
    const auto indices = parse_n_spec(args.n_spec, modes);
    const complex<double> center =
        -complex<double>(state.mean_q(0), state.mean_p(0)) / std::sqrt(2.0);
    const auto points = parse_alpha_spec(args.alpha_spec, modes, center);
    if (args.with_weights)
        for (const auto& p : points)
            if (!p.weight) throw SchemaError("--with-weights requires the polar --alpha form");

    WarningLog warnings;
    std::optional<FockMatrix> rho;
    if (args.oracle == "fock") {
        rho = fock_reference(state, 24, &warnings);
        if (!rho)
            throw ConfigInvalid(
                "fock oracle unavailable: covariance is not coherent, thermal or pure squeezed");
    } else if (args.oracle != "none" && args.oracle != "quadrature") {
        throw SchemaError("--oracle must be none, quadrature or fock");
    }

    struct Row {
        const MultiIndex* n;
        const AlphaPoint* pt;
        double omega = 0.0;
        std::optional<double> oracle;
    };
    std::vector<Row> rows;
    rows.reserve(points.size() * indices.size());
    for (const auto& pt : points) {
        for (const auto& n : indices) {
            Row row{&n, &pt, tomogram_value(state, n, pt.alpha), std::nullopt};
            if (args.oracle == "quadrature")
                row.oracle = tomogram_by_quadrature(state, n, pt.alpha);
            else if (args.oracle == "fock")
                row.oracle = tomogram_from_fock(*rho, n, pt.alpha, &warnings);
            rows.push_back(row);
        }
    }

    Json params;
    params["state_file"] = args.state_file;
    params["n"] = args.n_spec;
    params["alpha"] = args.alpha_spec;
    params["format"] = args.format;
    params["oracle"] = args.oracle;
    params["with_weights"] = args.with_weights;
    const Json manifest = make_manifest("tomogram", std::move(params), warnings);

    if (args.format == "csv") {
        std::ostringstream csv;
        for (int k = 0; k < modes; ++k)
            csv << (k ? "," : "") << "n" << (modes > 1 ? std::to_string(k + 1) : "");
        for (int k = 0; k < modes; ++k) {
            const std::string sfx = modes > 1 ? std::to_string(k + 1) : "";
            csv << ",re_alpha" << sfx << ",im_alpha" << sfx;
        }
        csv << ",omega";
        if (args.oracle != "none") csv << ",omega_oracle,abs_delta";
        if (args.with_weights) csv << ",weight";
        csv << "\n";
        for (const auto& row : rows) {
            for (int k = 0; k < modes; ++k) csv << (k ? "," : "") << (*row.n)[static_cast<std::size_t>(k)];
            for (int k = 0; k < modes; ++k)
                csv << "," << fmt12(row.pt->alpha(k).real()) << "," << fmt12(row.pt->alpha(k).imag());
            csv << "," << fmt12(row.omega);
            if (row.oracle)
                csv << "," << fmt12(*row.oracle) << "," << fmt12(std::abs(*row.oracle - row.omega));
            if (args.with_weights) csv << "," << fmt12(*row.pt->weight);
            csv << "\n";
        }
        emit_csv(csv.str(), manifest, args.out_path);
    } else if (args.format == "json") {
        Json doc;
        doc["manifest"] = manifest;
        Json jrows = Json::array();
        for (const auto& row : rows) {
            Json jr;
            jr["n"] = *row.n;
            Json alphas = Json::array();
            for (Eigen::Index k = 0; k < row.pt->alpha.size(); ++k)
                alphas.push_back(complex_to_json(row.pt->alpha(k)));
            jr["alpha"] = std::move(alphas);
            jr["omega"] = row.omega;
            if (row.oracle) {
                jr["omega_oracle"] = *row.oracle;
                jr["abs_delta"] = std::abs(*row.oracle - row.omega);
            }
            if (row.pt->weight) jr["weight"] = *row.pt->weight;
            jrows.push_back(std::move(jr));
        }
        doc["rows"] = std::move(jrows);
        emit_json(doc, args.out_path);
    } else {
        throw SchemaError("--format must be json or csv");
    }
    return kExitOk;
}

int cmd_validate(const std::string& state_file, const std::string& out_path) {
    const GaussianState state = load_state_file(state_file);
    const ValidityReport report = validate(state);
    Json params;
    params["state_file"] = state_file;
    Json doc;
    doc["manifest"] = make_manifest("validate", std::move(params), {});
    doc["report"] = validity_report_to_json(report);
    emit_json(doc, out_path);
    return report.verdict == Verdict::Valid ? kExitOk : kExitRejected;
}

int cmd_p0(const std::string& state_file, const std::string& alpha_spec, const std::string& format,
           const std::string& out_path) {
    const GaussianState state = load_state_file(state_file);
    const auto points = parse_alpha_spec(alpha_spec, state.modes(), {0.0, 0.0});
    Json params;
    params["state_file"] = state_file;
    params["alpha"] = alpha_spec;
    params["format"] = format;
    const Json manifest = make_manifest("p0", std::move(params), {});
    if (format == "csv") {
        std::ostringstream csv;
        for (int k = 0; k < state.modes(); ++k) {
            const std::string sfx = state.modes() > 1 ? std::to_string(k + 1) : "";
            csv << (k ? "," : "") << "re_alpha" << sfx << ",im_alpha" << sfx;
        }
        csv << ",p0\n";
        for (const auto& pt : points) {
            for (int k = 0; k < state.modes(); ++k)
                csv << (k ? "," : "") << fmt12(pt.alpha(k).real()) << ","
                    << fmt12(pt.alpha(k).imag());
            csv << "," << fmt12(build_kernel(state, pt.alpha).p0) << "\n";
        }
        emit_csv(csv.str(), manifest, out_path);
    } else if (format == "json") {
        Json doc;
        doc["manifest"] = manifest;
        Json rows = Json::array();
        for (const auto& pt : points) {
            Json jr;
            Json alphas = Json::array();
            for (Eigen::Index k = 0; k < pt.alpha.size(); ++k)
                alphas.push_back(complex_to_json(pt.alpha(k)));
            jr["alpha"] = std::move(alphas);
            jr["p0"] = build_kernel(state, pt.alpha).p0;
            rows.push_back(std::move(jr));
        }
        doc["rows"] = std::move(rows);
        emit_json(doc, out_path);
    } else {
        throw SchemaError("--format must be json or csv");
    }
    return kExitOk;
}

struct ReconstructArgs {
    std::string input_file;
    double s = -0.5;
    int cutoff = 12;
    std::string grid = "40x40";
    double radius = 4.0;
    int n_max = 20;
    std::string out_path;
};

/// Reconstruction from a CSV written by `tomogram --alpha polar:...
/// --with-weights`; the weight column makes the sample file self-describing.
ReconstructionResult reconstruct_from_csv(const std::string& path, const ReconstructArgs& args) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open tomogram file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw SchemaError("empty tomogram CSV");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const auto cols = split(header, ',');
    auto col_of = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == name) return static_cast<int>(i);
        return -1;
    };
    const int cn = col_of("n"), cre = col_of("re_alpha"), cim = col_of("im_alpha"),
              com = col_of("omega"), cw = col_of("weight");
    if (cn < 0 || cre < 0 || cim < 0 || com < 0)
        throw SchemaError("tomogram CSV must have columns n, re_alpha, im_alpha, omega");
    if (cw < 0)
        throw ConfigInvalid(
            "tomogram CSV lacks a weight column; regenerate with --alpha polar:... --with-weights");
    if (!(args.s > -1.0 && args.s <= 0.0)) throw ConfigInvalid("--s must lie in (-1, 0]");

    struct Sample {
        double weight = 0.0;
        std::map<int, double> omega_by_n;
    };
    std::map<std::pair<std::string, std::string>, Sample> samples;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != cols.size()) throw SchemaError("tomogram CSV row has wrong column count");
        auto& sample = samples[{f[static_cast<std::size_t>(cre)], f[static_cast<std::size_t>(cim)]}];
        sample.weight = std::stod(f[static_cast<std::size_t>(cw)]);
        sample.omega_by_n[std::stoi(f[static_cast<std::size_t>(cn)])] =
            std::stod(f[static_cast<std::size_t>(com)]);
    }
    if (samples.empty()) throw SchemaError("tomogram CSV holds no rows");
    int file_n_max = 0;
    for (const auto& [key, s] : samples)
        for (const auto& [n, v] : s.omega_by_n) file_n_max = std::max(file_n_max, n);

    const double q = (args.s + 1.0) / (args.s - 1.0);
    const double t = (args.s - 1.0) / (args.s + 1.0);
    ReconstructionResult result;
    ComplexMatrix raw = ComplexMatrix::Zero(args.cutoff + 1, args.cutoff + 1);
    for (const auto& [key, sample] : samples) {
        double scalar = 0.0;
        double qn = 2.0 / (1.0 - args.s);
        for (int n = 0; n <= file_n_max; ++n) {
            auto it = sample.omega_by_n.find(n);
            if (it == sample.omega_by_n.end())
                throw ConfigInvalid("tomogram CSV misses n = " + std::to_string(n) +
                                    " at alpha = (" + key.first + ", " + key.second + ")");
            scalar += qn * it->second;
            qn *= q;
        }
        const complex<double> alpha{std::stod(key.first), std::stod(key.second)};
        raw.noalias() += (sample.weight * scalar * 2.0 / (1.0 + args.s)) *
                         displaced_ordering_kernel(alpha, t, args.cutoff);
    }
    result.trace = raw.trace().real();
    result.hermiticity_residual = (raw - raw.adjoint().eval()).cwiseAbs().maxCoeff();
    result.rho.modes = 1;
    result.rho.cutoff = args.cutoff;
    result.rho.mat = 0.5 * (raw + raw.adjoint().eval());
    result.min_eigenvalue = min_eigenvalue(result.rho);
    return result;
}

int cmd_reconstruct(const ReconstructArgs& args) {
    const auto parts = split(args.grid, 'x');
    if (parts.size() != 2) throw SchemaError("--grid must be RADIALxANGULAR, e.g. 40x40");

    ReconstructionResult result;
    const bool csv_input = args.input_file.size() > 4 &&
                           args.input_file.substr(args.input_file.size() - 4) == ".csv";
    if (csv_input) {
        result = reconstruct_from_csv(args.input_file, args);
    } else {
        const GaussianState state = load_state_file(args.input_file);
        ReconstructionConfig cfg;
        cfg.s_params = Eigen::VectorXd::Constant(state.modes(), args.s);
        cfg.cutoff = args.cutoff;
        cfg.radial_nodes = std::stoi(parts[0]);
        cfg.angular_nodes = std::stoi(parts[1]);
        cfg.max_radius = args.radius;
        cfg.n_max = args.n_max;
        result = reconstruct_from_state(state, cfg);
    }

    Json params;
    params["input_file"] = args.input_file;
    params["s"] = args.s;
    params["cutoff"] = args.cutoff;
    params["grid"] = args.grid;
    params["radius"] = args.radius;
    params["n_max"] = args.n_max;
    Json doc;
    doc["manifest"] = make_manifest("reconstruct", std::move(params), result.warnings);
    doc["trace"] = result.trace;
    doc["trace_deficit"] = trace_deficit(result.rho);
    doc["hermiticity_residual"] = result.hermiticity_residual;
    doc["min_eigenvalue"] = result.min_eigenvalue;
    doc["density"] = fock_matrix_to_json(result.rho);
    emit_json(doc, args.out_path);
    return kExitOk;
}

struct PositivityArgs {
    std::string state_file;
    int n_max = 15;
    double alpha_box = 3.0;
    int resolution = 9;
    std::string out_path;
};

int cmd_positivity(const PositivityArgs& args) {
    const GaussianState state = load_state_file(args.state_file);
    ScanSpec spec;
    spec.n_max = args.n_max;
    spec.alpha = {-args.alpha_box, args.alpha_box, args.resolution};
    const PositivityReport report = gaussian_positivity_report(state, spec);
    Json params;
    params["state_file"] = args.state_file;
    params["n_max"] = args.n_max;
    params["alpha_box"] = args.alpha_box;
    params["resolution"] = args.resolution;
    Json doc;
    doc["manifest"] = make_manifest("positivity", std::move(params), {});
    doc["report"] = positivity_report_to_json(report);
    emit_json(doc, args.out_path);
    return report.verdict == ScanVerdict::NegativeWitnessFound ? kExitWitness : kExitOk;
}

struct OracleCompareArgs {
    std::string state_file;
    std::string n_spec = "0..4";
    std::string alpha_spec = "0";
    std::string format = "json";
    double tol = -1.0;  // negative = report only
    std::string out_path;
};

int cmd_oracle_compare(const OracleCompareArgs& args) {
    const GaussianState state = load_state_file(args.state_file);
    const int modes = state.modes();
    const auto indices = parse_n_spec(args.n_spec, modes);
    const auto points = parse_alpha_spec(args.alpha_spec, modes, {0.0, 0.0});

    WarningLog warnings;
    const std::optional<FockMatrix> rho =
        modes == 1 ? fock_reference(state, 24, &warnings) : std::nullopt;

    std::ostringstream csv;
    Json jrows = Json::array();
    double max_delta = 0.0;
    for (int k = 0; k < modes; ++k)
        csv << (k ? "," : "") << "n" << (modes > 1 ? std::to_string(k + 1) : "");
    for (int k = 0; k < modes; ++k) {
        const std::string sfx = modes > 1 ? std::to_string(k + 1) : "";
        csv << ",re_alpha" << sfx << ",im_alpha" << sfx;
    }
    csv << ",omega,omega_quadrature,abs_delta_quadrature";
    if (rho) csv << ",omega_fock,abs_delta_fock";
    csv << "\n";
    for (const auto& pt : points) {
        for (const auto& n : indices) {
            const double omega = tomogram_value(state, n, pt.alpha);
            const double quad = tomogram_by_quadrature(state, n, pt.alpha);
            const double dq = std::abs(omega - quad);
            max_delta = std::max(max_delta, dq);
            Json jr;
            jr["n"] = n;
            Json alphas = Json::array();
            for (Eigen::Index k = 0; k < pt.alpha.size(); ++k)
                alphas.push_back(complex_to_json(pt.alpha(k)));
            jr["alpha"] = std::move(alphas);
            jr["omega"] = omega;
            jr["omega_quadrature"] = quad;
            jr["abs_delta_quadrature"] = dq;
            for (int k = 0; k < modes; ++k) csv << (k ? "," : "") << n[static_cast<std::size_t>(k)];
            for (int k = 0; k < modes; ++k)
                csv << "," << fmt12(pt.alpha(k).real()) << "," << fmt12(pt.alpha(k).imag());
            csv << "," << fmt12(omega) << "," << fmt12(quad) << "," << fmt12(dq);
            if (rho) {
                const double fock = tomogram_from_fock(*rho, n, pt.alpha, &warnings);
                const double df = std::abs(omega - fock);
                max_delta = std::max(max_delta, df);
                jr["omega_fock"] = fock;
                jr["abs_delta_fock"] = df;
                csv << "," << fmt12(fock) << "," << fmt12(df);
            }
            csv << "\n";
            jrows.push_back(std::move(jr));
        }
    }

    Json params;
    params["state_file"] = args.state_file;
    params["n"] = args.n_spec;
    params["alpha"] = args.alpha_spec;
    params["format"] = args.format;
    if (args.tol >= 0.0) params["tol"] = args.tol;
    const Json manifest = make_manifest("oracle-compare", std::move(params), warnings);

    if (args.format == "csv") {
        emit_csv(csv.str(), manifest, args.out_path);
    } else if (args.format == "json") {
        Json doc;
        doc["manifest"] = manifest;
        doc["rows"] = std::move(jrows);
        doc["max_abs_delta"] = max_delta;
        emit_json(doc, args.out_path);
    } else {
        throw SchemaError("--format must be json or csv");
    }
    if (args.tol >= 0.0 && max_delta > args.tol) {
        std::cerr << "oracle-compare: max |delta| = " << fmt12(max_delta)
                  << " exceeds tolerance " << fmt12(args.tol) << "\n";
        return kExitRejected;
    }
    return kExitOk;
}

int run(int argc, char** argv) {
    CLI::App app{"Photon-number tomography of Gaussian states"};
    app.require_subcommand(1);

    std::string state_file, out_path;

    auto* validate_cmd = app.add_subcommand("validate", "Uncertainty-inequality checks");
    validate_cmd->add_option("state", state_file, "state JSON file")->required();
    validate_cmd->add_option("-o,--output", out_path, "output file (default stdout)");

    TomogramArgs targs;
    auto* tomogram_cmd = app.add_subcommand("tomogram", "Photon-number tomogram values");
    tomogram_cmd->add_option("state", targs.state_file, "state JSON file")->required();
    tomogram_cmd->add_option("--n", targs.n_spec, "photon numbers, e.g. 0..8 or 0,2,5;0..3");
    tomogram_cmd->add_option("--alpha", targs.alpha_spec,
                             "scan points: complex list, grid:..., or polar:...");
    tomogram_cmd->add_option("--format", targs.format, "json or csv");
    tomogram_cmd->add_option("--oracle", targs.oracle, "none, quadrature or fock");
    tomogram_cmd->add_option("-o,--output", targs.out_path, "output file (default stdout)");
    tomogram_cmd->add_flag("--with-weights", targs.with_weights,
                           "append polar quadrature weights (reconstruction input)");

    std::string p0_alpha = "0", p0_format = "json";
    auto* p0_cmd = app.add_subcommand("p0", "No-photon probability P0(alpha)");
    p0_cmd->add_option("state", state_file, "state JSON file")->required();
    p0_cmd->add_option("--alpha", p0_alpha, "scan points");
    p0_cmd->add_option("--format", p0_format, "json or csv");
    p0_cmd->add_option("-o,--output", out_path, "output file (default stdout)");

    ReconstructArgs rargs;
    auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Density matrix from tomogram data");
    reconstruct_cmd->add_option("input", rargs.input_file, "state JSON or tomogram CSV")->required();
    reconstruct_cmd->add_option("--s", rargs.s, "ordering parameter in (-1, 0]");
    reconstruct_cmd->add_option("--cutoff", rargs.cutoff, "Fock cutoff per mode");
    reconstruct_cmd->add_option("--grid", rargs.grid, "polar grid RADIALxANGULAR");
    reconstruct_cmd->add_option("--radius", rargs.radius, "alpha-grid radius");
    reconstruct_cmd->add_option("--n-max", rargs.n_max, "photon-number summation cap");
    reconstruct_cmd->add_option("-o,--output", rargs.out_path, "output file (default stdout)");

    PositivityArgs pargs;
    auto* positivity_cmd = app.add_subcommand("positivity", "Positivity criterion chain");
    positivity_cmd->add_option("state", pargs.state_file, "state JSON file")->required();
    positivity_cmd->add_option("--n-max", pargs.n_max, "photon-number scan cap");
    positivity_cmd->add_option("--alpha-box", pargs.alpha_box, "scan box half width");
    positivity_cmd->add_option("--resolution", pargs.resolution, "scan nodes per axis");
    positivity_cmd->add_option("-o,--output", pargs.out_path, "output file (default stdout)");

    OracleCompareArgs oargs;
    auto* oracle_cmd = app.add_subcommand("oracle-compare", "Hermite path vs brute-force oracles");
    oracle_cmd->add_option("state", oargs.state_file, "state JSON file")->required();
    oracle_cmd->add_option("--n", oargs.n_spec, "photon numbers");
    oracle_cmd->add_option("--alpha", oargs.alpha_spec, "scan points");
    oracle_cmd->add_option("--format", oargs.format, "json or csv");
    oracle_cmd->add_option("--tol", oargs.tol, "fail (exit 2) when any |delta| exceeds this");
    oracle_cmd->add_option("-o,--output", oargs.out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int code = kExitOk;
    try {
        if (validate_cmd->parsed()) code = cmd_validate(state_file, out_path);
        else if (tomogram_cmd->parsed()) code = cmd_tomogram(targs);
        else if (p0_cmd->parsed()) code = cmd_p0(state_file, p0_alpha, p0_format, out_path);
        else if (reconstruct_cmd->parsed()) code = cmd_reconstruct(rargs);
        else if (positivity_cmd->parsed()) code = cmd_positivity(pargs);
        else if (oracle_cmd->parsed()) code = cmd_oracle_compare(oargs);
    } catch (const SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DegreeCapExceeded& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return kExitRejected;
    } catch (const ConfigInvalid& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return kExitRejected;
    } catch (const GridTooCoarse& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return kExitRejected;
    } catch (const InvalidSqueezeParams& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return kExitRejected;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    std::cerr << "wall_time_s="
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
              << "\n";
    return code;
}

}  // namespace pntomo::cli

int main(int argc, char** argv) { return pntomo::cli::run(argc, argv); }
