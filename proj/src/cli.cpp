#include "dmtopo/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dmtopo::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json default_config() {
    return json{
        {"model", {{"u", 0.6}, {"w", 0.0}, {"lambda", 1.0}, {"L", 8}}},
        {"grid", {{"n_k", 256}, {"t_max", 20.0}, {"n_samples", 2000}}},
        {"initial", {{"a", 1.0}, {"b", 2.0}}},
        {"tolerances", {{"ep_tol", 1e-8}, {"gap_tol", 1e-6}, {"engine_tol", 1e-6}}},
        {"output", {{"directory", "."}, {"format", "csv"}}},
        {"sweep",
         {{"u_min", 0.0},
          {"u_max", 3.0},
          {"u_resolution", 61},
          {"w_min", 0.0},
          {"w_max", 1.0},
          {"w_resolution", 41}}},
    };
}

void merge_into(json& base, const json& patch) {
    for (auto it = patch.begin(); it != patch.end(); ++it) {
        if (it->is_object() && base.contains(it.key()) && base[it.key()].is_object())
            merge_into(base[it.key()], *it);
        else
            base[it.key()] = *it;
    }
}

void apply_override(json& doc, const std::string& path, const std::string& value) {
    json* node = &doc;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    if (parts.empty()) throw ConfigError("empty override path");
    for (size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];
    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;  // keep as string
    (*node)[parts.back()] = parsed;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const fs::path& path, const RunConfig& cfg) {
        out_.open(path, std::ios::binary);
        if (!out_) throw IoError("cannot open " + path.string());
        out_ << "# dmtopo " << kVersion << " config_hash=" << config_hash(cfg) << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i)
            out_ << cells[i] << (i + 1 < cells.size() ? "," : "");
        out_ << "\n";
        if (!out_) throw IoError("write failure");
    }

  private:
    std::ofstream out_;
};

void write_json(const fs::path& path, const RunConfig& cfg, json doc) {
    doc["config_hash"] = config_hash(cfg);
    doc["version"] = kVersion;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string());
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("write failure");
}

struct Problem {
    std::vector<BlochBlock> blocks;
    CorrelationField C0;
    ChiralFrame frame;
};

Problem setup(const RunConfig& cfg) {
    Problem p;
    const LatticeModel model = build_ssh_model(cfg.u, cfg.w, cfg.lambda, cfg.L);
    p.blocks = bloch_blocks(model, cfg.n_k);
    p.C0 = initial_state({cfg.a, cfg.b}, k_grid(cfg.n_k));
    if (cfg.occupation_override >= 0.0)
        for (auto& b : p.C0.blocks) b = Matrix2{{cfg.occupation_override, 0.0}, {0.0, 0.25}};
    try {
        p.frame = chiral_axis(p.blocks, 1e-12);
    } catch (const AllImaginaryPartsZero&) {
        p.frame = frame_from_axis(Vector3::UnitX());  // hopping-free corner
    }
    return p;
}

SweepMetadata sweep_meta(const RunConfig& cfg) {
    SweepMetadata meta;
    meta.lambda = cfg.lambda;
    meta.a = cfg.a;
    meta.b = cfg.b;
    meta.t_max = cfg.t_max;
    meta.n_k = cfg.n_k;
    meta.n_samples = cfg.n_samples;
    meta.ep_tol = cfg.ep_tol;
    meta.gap_tol = cfg.gap_tol;
    return meta;
}

}  // namespace

RunConfig load_config(const std::string& config_path, const std::vector<std::string>& overrides) {
    json doc = default_config();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot read config file: " + config_path);
        json user = json::parse(in, nullptr, false);
        if (user.is_discarded()) throw ConfigError("invalid JSON in " + config_path);
        merge_into(doc, user);
    }
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override must look like path=value: " + ov);
        apply_override(doc, ov.substr(0, eq), ov.substr(eq + 1));
    }

    RunConfig cfg;
    try {
        cfg.u = doc["model"]["u"].get<double>();
        cfg.w = doc["model"]["w"].get<double>();
        cfg.lambda = doc["model"]["lambda"].get<double>();
        cfg.L = doc["model"]["L"].get<int>();
        cfg.n_k = doc["grid"]["n_k"].get<int>();
        cfg.t_max = doc["grid"]["t_max"].get<double>();
        cfg.n_samples = doc["grid"]["n_samples"].get<int>();
        cfg.a = doc["initial"]["a"].get<double>();
        cfg.b = doc["initial"]["b"].get<double>();
        if (doc["initial"].contains("occupation_override"))
            cfg.occupation_override = doc["initial"]["occupation_override"].get<double>();
        cfg.ep_tol = doc["tolerances"]["ep_tol"].get<double>();
        cfg.gap_tol = doc["tolerances"]["gap_tol"].get<double>();
        cfg.engine_tol = doc["tolerances"]["engine_tol"].get<double>();
        cfg.directory = doc["output"]["directory"].get<std::string>();
        cfg.format = doc["output"]["format"].get<std::string>();
        cfg.u_min = doc["sweep"]["u_min"].get<double>();
        cfg.u_max = doc["sweep"]["u_max"].get<double>();
        cfg.u_resolution = doc["sweep"]["u_resolution"].get<int>();
        cfg.w_min = doc["sweep"]["w_min"].get<double>();
        cfg.w_max = doc["sweep"]["w_max"].get<double>();
        cfg.w_resolution = doc["sweep"]["w_resolution"].get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    if (cfg.ep_tol <= 0 || cfg.gap_tol <= 0 || cfg.engine_tol <= 0)
        throw ConfigError("tolerances must be > 0");
    if (cfg.n_k < 8) throw ConfigError("grid.n_k must be >= 8");
    if (cfg.n_samples < 16) throw ConfigError("grid.n_samples must be >= 16");
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("output.format must be csv or json");
    cfg.raw = doc;
    return cfg;
}

std::string config_hash(const RunConfig& cfg) {
    // FNV-1a over the canonical (key-sorted) dump
    const std::string s = cfg.raw.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int cmd_spectrum(const RunConfig& cfg) {
    const Problem p = setup(cfg);
    const PTClassification cls = pt_classify(p.blocks, cfg.ep_tol);
    fs::create_directories(cfg.directory);
    CsvWriter csv(fs::path(cfg.directory) / "spectrum.csv", cfg);
    csv.row({"k", "re_eps_plus", "im_eps_plus", "re_eps_minus", "im_eps_minus", "pt_label"});
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        const PauliForm pf = pauli_decompose(p.blocks[i].X_tilde_k);
        const Complex mu = pauli_mu(pf.n);
        const Complex ep = pf.alpha + mu, em = pf.alpha - mu;
        const char* label = cls.per_k[i] == KSectorLabel::Unbroken        ? "Unbroken"
                            : cls.per_k[i] == KSectorLabel::Broken        ? "Broken"
                                                                          : "ExceptionalPoint";
        csv.row({fmt17(p.blocks[i].k), fmt17(ep.real()), fmt17(ep.imag()), fmt17(em.real()),
                 fmt17(em.imag()), label});
    }
    return kExitOk;
}

int cmd_trace(const RunConfig& cfg) {
    const Problem p = setup(cfg);
    const TopologyTrace trace =
        transition_scan(p.blocks, p.C0, p.frame, cfg.t_max, cfg.n_samples, cfg.gap_tol);
    fs::create_directories(cfg.directory);
    CsvWriter csv(fs::path(cfg.directory) / "trace.csv", cfg);
    csv.row({"t", "nu", "min_planar_amplitude", "total_occupation"});
    for (size_t i = 0; i < trace.times.size(); ++i) {
        const CorrelationField C = evolve_propagator(p.blocks, p.C0, trace.times[i]);
        double occ = 0.0;
        for (const auto& b : C.blocks) occ += b.trace().real();
        occ /= static_cast<double>(C.blocks.size());
        csv.row({fmt17(trace.times[i]), trace.nu[i] ? std::to_string(*trace.nu[i]) : "",
                 fmt17(trace.min_planar_amplitude[i]), fmt17(occ)});
    }
    json tr = json::array();
    for (double t : trace.transitions) tr.push_back(t);
    write_json(fs::path(cfg.directory) / "transitions.json", cfg, json{{"transitions", tr}});
    return kExitOk;
}

int cmd_phase_diagram(const RunConfig& cfg) {
    const SweepResult result = sweep(cfg.u_min, cfg.u_max, cfg.u_resolution, cfg.w_min,
                                     cfg.w_max, cfg.w_resolution, sweep_meta(cfg));
    fs::create_directories(cfg.directory);
    CsvWriter csv(fs::path(cfg.directory) / "phase_diagram.csv", cfg);
    csv.row({"u", "w", "pt_part", "region", "n_transitions", "first_transition_time"});
    for (const auto& pt : result.points) {
        csv.row({fmt17(pt.u), fmt17(pt.w), to_string(pt.label.pt_part),
                 to_string(pt.label.region), std::to_string(pt.transition_times.size()),
                 pt.transition_times.empty() ? "" : fmt17(pt.transition_times.front())});
    }
    const auto& m = result.meta;
    write_json(fs::path(cfg.directory) / "phase_diagram_meta.json", cfg,
               json{{"lambda", m.lambda},
                    {"a", m.a},
                    {"b", m.b},
                    {"t_max", m.t_max},
                    {"n_k", m.n_k},
                    {"n_samples", m.n_samples},
                    {"ep_tol", m.ep_tol},
                    {"gap_tol", m.gap_tol}});
    return kExitOk;
}

int cmd_validate(const RunConfig& cfg) {
    json report;
    bool failed = false;
    fs::create_directories(cfg.directory);
    try {
        const Problem p = setup(cfg);
        const std::vector<double> sample_times = {0.0, 0.5, 1.0, 2.0, 5.0,
                                                  std::min(10.0, cfg.t_max)};

        bool any_defective = false;
        for (const auto& b : p.blocks)
            if (eigensystem(b.X_tilde_k).defective) any_defective = true;

        double d_spectral = 0.0, d_ode = 0.0;
        for (double t : sample_times) {
            const CorrelationField ref = evolve_propagator(p.blocks, p.C0, t);
            if (!any_defective) {
                const CorrelationField sp = evolve_spectral(p.blocks, p.C0, t);
                for (size_t i = 0; i < ref.blocks.size(); ++i)
                    d_spectral = std::max(
                        d_spectral, (ref.blocks[i] - sp.blocks[i]).cwiseAbs().maxCoeff());
            }
        }
        const Trajectory ode = evolve_bloch_ode(p.blocks, p.C0, sample_times, 0.01);
        for (size_t ti = 0; ti < sample_times.size(); ++ti) {
            const CorrelationField ref = evolve_propagator(p.blocks, p.C0, sample_times[ti]);
            for (size_t i = 0; i < ref.blocks.size(); ++i)
                d_ode = std::max(d_ode, (ref.blocks[i] - ode.fields[ti].blocks[i])
                                            .cwiseAbs()
                                            .maxCoeff());
        }
        if (any_defective)
            report["propagator_vs_spectral"] = "skipped: defective";
        else
            report["propagator_vs_spectral"] = d_spectral;
        report["propagator_vs_ode"] = d_ode;

        // k-space vs real-space oracle at L = 8
        const int Lo = 8;
        const LatticeModel oracle_model = build_ssh_model(cfg.u, cfg.w, cfg.lambda, Lo);
        const auto oracle_blocks = bloch_blocks(oracle_model, Lo);
        CorrelationField C0L = initial_state({cfg.a, cfg.b}, k_grid(Lo));
        if (cfg.occupation_override >= 0.0)
            for (auto& b : C0L.blocks)
                b = Matrix2{{cfg.occupation_override, 0.0}, {0.0, 0.25}};
        const Eigen::MatrixXcd C0_real = from_bloch_basis(C0L.blocks);
        double d_real = 0.0;
        for (double t : sample_times) {
            const Eigen::MatrixXcd Ct = evolve_realspace_oracle(oracle_model, C0_real, t);
            const auto Ct_blocks = to_bloch_basis(Ct, Lo);
            const CorrelationField ref = evolve_propagator(oracle_blocks, C0L, t);
            for (int i = 0; i < Lo; ++i)
                d_real = std::max(d_real,
                                  (ref.blocks[i] - Ct_blocks[i]).cwiseAbs().maxCoeff());
        }
        report["kspace_vs_realspace"] = d_real;

        // C <-> K round trip, antiparallelism, chiral plane along the trajectory
        double d_round = 0.0, d_angle = 0.0, d_chiral = 0.0;
        for (double t : sample_times) {
            const CorrelationField C = evolve_propagator(p.blocks, p.C0, t);
            d_chiral =
                std::max(d_chiral, check_chiral(C, p.frame, 1.0).max_axis_component);
            // modular checks need the spectrum safely inside (0, 1); pure loss
            // drives occupations numerically to 0 at late times, where K diverges
            bool boundary = false, unphysical = false;
            for (const auto& b : C.blocks) {
                const PauliForm pf = pauli_decompose(b);
                const double lo_e = pf.alpha.real() - pf.n.real().norm();
                const double hi_e = pf.alpha.real() + pf.n.real().norm();
                if (lo_e < -1e-9 || hi_e > 1.0 + 1e-9) unphysical = true;
                else if (lo_e < 1e-9 || hi_e > 1.0 - 1e-9) boundary = true;
            }
            // boundary-pinned but physical states are skipped; genuinely
            // unphysical ones must still surface as a validation error
            if (boundary && !unphysical) continue;
            const ModularField K = modular_from_correlation(C);
            const CorrelationField C2 = correlation_from_modular(K);
            for (size_t i = 0; i < C.blocks.size(); ++i)
                d_round =
                    std::max(d_round, (C.blocks[i] - C2.blocks[i]).cwiseAbs().maxCoeff());
            d_angle = std::max(d_angle, nk_nc_antiparallel_check(C));
        }
        report["ck_round_trip"] = d_round;
        report["nk_nc_angle"] = d_angle;
        report["chiral_plane_deviation"] = d_chiral;

        auto over = [&](const json& v) {
            return v.is_number() && v.get<double>() > cfg.engine_tol;
        };
        for (const auto& key : {"propagator_vs_spectral", "propagator_vs_ode",
                                "kspace_vs_realspace", "ck_round_trip", "nk_nc_angle",
                                "chiral_plane_deviation"})
            if (over(report[key])) failed = true;
    } catch (const std::exception& e) {
        report["error"] = e.what();
        failed = true;
    }
    report["status"] = failed ? "fail" : "pass";
    write_json(fs::path(cfg.directory) / "validate.json", cfg, report);
    return failed ? kExitValidationFailure : kExitOk;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (args.empty() || args[0] == "-h" || args[0] == "--help") {
            std::cout << "usage: dmtopo <spectrum|trace|phase-diagram|validate> "
                         "[--config FILE] [--out DIR] [--path.to.key=value ...]\n";
            return args.empty() ? kExitConfigError : kExitOk;
        }
        const std::string sub = args[0];
        std::string config_path, out_dir;
        std::vector<std::string> overrides;
        for (size_t i = 1; i < args.size(); ++i) {
            const std::string& a = args[i];
            auto next = [&]() -> std::string {
                if (i + 1 >= args.size()) throw ConfigError("missing value after " + a);
                return args[++i];
            };
            if (a == "--config") config_path = next();
            else if (a == "--out") out_dir = next();
            else if (a.rfind("--", 0) == 0 && a.find('.') != std::string::npos) {
                std::string ov = a.substr(2);
                if (ov.find('=') == std::string::npos) ov += "=" + next();
                overrides.push_back(ov);
            }
            else
                throw ConfigError("unrecognized argument: " + a);
        }
        RunConfig cfg = load_config(config_path, overrides);
        if (!out_dir.empty()) {
            cfg.directory = out_dir;
            cfg.raw["output"]["directory"] = out_dir;
        }
        if (sub == "spectrum") return cmd_spectrum(cfg);
        if (sub == "trace") return cmd_trace(cfg);
        if (sub == "phase-diagram") return cmd_phase_diagram(cfg);
        if (sub == "validate") return cmd_validate(cfg);
        throw ConfigError("unknown subcommand: " + sub);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidationFailure;
    }
}

}  // namespace dmtopo::cli
