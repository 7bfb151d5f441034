#include "scope/cli.hpp"

#include "scope/channels.hpp"
#include "scope/criteria.hpp"
#include "scope/io.hpp"
#include "scope/schmidt.hpp"
#include "scope/states.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace scope::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CommonOptions {
    double decision_tol = kDecisionTol;
    double rank_tol = kDefaultRankTol;
    bool no_validate = false;
    Tolerances tols;
};

// One requested criterion, parsed from the --criteria list.
struct CriterionRequest {
    std::string kind;  // rc | sympoly | theta | zhang | filter
    int l = 1;
    bool use_rank = false;
    double theta = 0.0;
    std::string la_path;
    std::string lb_path;
};

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    return read_text_file(path);
}

json parse_json(const std::string& bytes, const std::string& what) {
    try {
        return json::parse(bytes);
    } catch (const json::exception& e) {
        throw ParseError(what + ": invalid JSON (" + e.what() + ")");
    }
}

json input_section(const std::string& path, const std::string& bytes) {
    return {{"path", path.empty() ? "-" : path}, {"hash", fnv1a_hex(bytes)}};
}

json tolerance_section(const CommonOptions& opt) {
    return {{"hermiticity", opt.tols.hermiticity},
            {"trace", opt.tols.trace},
            {"positivity", opt.tols.positivity},
            {"rank_tol", opt.rank_tol},
            {"decision_tol", opt.decision_tol}};
}

std::vector<double> to_vector(const RealVector& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

BipartiteState load_state(const json& j, const CommonOptions& opt) {
    const ParsedState parsed = state_from_json(j);
    if (opt.no_validate) return BipartiteState::trusted(parsed.m, parsed.na, parsed.nb);
    return validate_density(parsed.m, parsed.na, parsed.nb, opt.tols);
}

void add_spectrum_section(json& doc, const BipartiteState& s, double rank_tol) {
    const SchmidtSpectrum sp = schmidt_spectrum(s, rank_tol);
    const SymmetricPolynomials m = symmetric_polynomials(sp);
    doc["spectrum"] = to_vector(sp.coeffs);
    doc["rank"] = sp.rank;
    doc["purity"] = purity(s.rho());
    doc["sum_mu_sq"] = sp.sum_squares();
    doc["sym_polys"] = to_vector(m.values);
    doc["rank_sensitivity"] = {{"smallest_retained", sp.smallest_retained()},
                               {"largest_discarded", sp.largest_discarded()}};
}

std::vector<CriterionRequest> parse_criteria_list(const std::string& list) {
    static const char* kValid = "rc, sympoly:l=<k>[:rank], theta:<radians>, zhang, filter:<LA.json>,<LB.json>";
    std::vector<std::string> tokens;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) tokens.push_back(tok);

    std::vector<CriterionRequest> out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        CriterionRequest req;
        if (t == "rc" || t == "zhang") {
            req.kind = t;
        } else if (t.rfind("sympoly", 0) == 0) {
            req.kind = "sympoly";
            std::string rest = t.substr(7);
            if (rest.rfind(":l=", 0) != 0)
                throw ParseError("criterion \"" + t + "\": expected sympoly:l=<k>[:rank]");
            rest = rest.substr(3);
            const auto colon = rest.find(':');
            std::string lstr = rest.substr(0, colon);
            try {
                req.l = std::stoi(lstr);
            } catch (const std::exception&) {
                throw ParseError("criterion \"" + t + "\": bad l value");
            }
            if (colon != std::string::npos) {
                const std::string suffix = rest.substr(colon + 1);
                if (suffix != "rank")
                    throw ParseError("criterion \"" + t + "\": unknown suffix \"" + suffix + "\"");
                req.use_rank = true;
            }
        } else if (t.rfind("theta:", 0) == 0) {
            req.kind = "theta";
            try {
                req.theta = std::stod(t.substr(6));
            } catch (const std::exception&) {
                throw ParseError("criterion \"" + t + "\": bad theta value");
            }
        } else if (t.rfind("filter:", 0) == 0) {
            req.kind = "filter";
            req.la_path = t.substr(7);
            if (i + 1 >= tokens.size())
                throw ParseError("criterion \"" + t + "\": filter needs two paths, filter:<LA>,<LB>");
            req.lb_path = tokens[++i];
        } else {
            throw ParseError("unknown criterion \"" + t + "\"; valid: " + std::string(kValid));
        }
        out.push_back(std::move(req));
    }
    if (out.empty()) throw ParseError(std::string("empty criteria list; valid: ") + kValid);
    return out;
}

Matrix load_operator_file(const std::string& path) {
    const json j = parse_json(read_text_file(path), path);
    return matrix_from_json_parts(j, path);
}

CriterionReport run_criterion(const BipartiteState& s, const CriterionRequest& req,
                              const CommonOptions& opt) {
    if (req.kind == "rc") return rc_check(s, opt.decision_tol);
    if (req.kind == "zhang") return zhang_check(s, opt.decision_tol);
    if (req.kind == "sympoly")
        return sympoly_check(s, req.l, req.use_rank, opt.rank_tol, opt.decision_tol);
    if (req.kind == "theta") return theta_check(s, req.theta, opt.decision_tol);
    // filter: the CLI always rescales to operator norm 1 so arbitrary
    // operator files are admissible
    const Matrix la = load_operator_file(req.la_path);
    const Matrix lb = load_operator_file(req.lb_path);
    return filter_check(s, la, lb, /*normalize=*/true, opt.decision_tol);
}

json check_document(const std::string& path, const std::string& bytes,
                    const std::vector<CriterionRequest>& requests, const CommonOptions& opt) {
    const BipartiteState s = load_state(parse_json(bytes, path.empty() ? "stdin" : path), opt);
    json doc;
    doc["input"] = input_section(path, bytes);
    doc["tolerances"] = tolerance_section(opt);
    add_spectrum_section(doc, s, opt.rank_tol);
    json criteria = json::array();
    bool any_detected = false;
    for (const CriterionRequest& req : requests) {
        const CriterionReport rep = run_criterion(s, req, opt);
        any_detected = any_detected || rep.detected;
        criteria.push_back(criterion_to_json(rep));
    }
    doc["criteria"] = std::move(criteria);
    doc["summary"] = any_detected ? "EntanglementDetected" : "Inconclusive";
    return doc;
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// --------------------------- subcommands -----------------------------------

int run_schmidt(const std::string& path, const CommonOptions& opt) {
    const std::string bytes = read_input(path);
    const BipartiteState s = load_state(parse_json(bytes, path.empty() ? "stdin" : path), opt);
    json doc;
    doc["input"] = input_section(path, bytes);
    doc["tolerances"] = tolerance_section(opt);
    add_spectrum_section(doc, s, opt.rank_tol);
    emit(doc);
    return kExitInconclusive;
}

int run_check(const std::string& path, const std::string& criteria_list,
              const std::string& batch_dir, const CommonOptions& opt) {
    const std::vector<CriterionRequest> requests = parse_criteria_list(criteria_list);

    if (batch_dir.empty()) {
        const std::string bytes = read_input(path);
        const json doc = check_document(path, bytes, requests, opt);
        emit(doc);
        return doc["summary"] == "EntanglementDetected" ? kExitDetected : kExitInconclusive;
    }

    // batch: evaluate every *.json in the directory, output ordered by filename
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(batch_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    json docs = json::array();
    bool any_detected = false;
    for (const std::string& file : files) {
        const std::string bytes = read_text_file(file);
        const json doc = check_document(file, bytes, requests, opt);
        any_detected = any_detected || doc["summary"] == "EntanglementDetected";
        docs.push_back(doc);
    }
    emit(docs);
    return any_detected ? kExitDetected : kExitInconclusive;
}

int run_channel(const std::string& path, std::optional<int> eb_l, bool use_rank,
                const std::string& choi_out, const CommonOptions& opt) {
    const std::string bytes = read_input(path);
    const QuantumChannel ch = channel_from_json(parse_json(bytes, path.empty() ? "stdin" : path));

    if (!choi_out.empty()) {
        const BipartiteState choi = choi_state(ch, opt.tols);
        const json doc = state_to_json(choi.rho(), choi.na(), choi.nb());
        if (choi_out == "-")
            emit(doc);
        else
            write_text_file(choi_out, doc.dump(2) + "\n");
        return kExitInconclusive;
    }

    const CriterionReport rep = eb_check(ch, *eb_l, use_rank, opt.rank_tol, opt.decision_tol);

    // report the channel-side spectrum scaled to the Choi Schmidt spectrum
    const ChannelCoeffMatrix e =
        channel_coeff_matrix(ch, matrix_unit_basis(ch.out_dim()), matrix_unit_basis(ch.in_dim()));
    const int d = std::min(ch.out_dim() * ch.out_dim(), ch.in_dim() * ch.in_dim());
    const SchmidtSpectrum sp = spectrum_from_values(singular_values(e.entries), d, opt.rank_tol);
    const SymmetricPolynomials m = symmetric_polynomials(sp);

    json doc;
    doc["input"] = input_section(path, bytes);
    doc["tolerances"] = tolerance_section(opt);
    doc["spectrum"] = to_vector(RealVector(sp.coeffs / double(ch.in_dim())));
    doc["rank"] = sp.rank;
    doc["sym_polys"] = to_vector(m.values);
    doc["criteria"] = json::array({criterion_to_json(rep)});
    doc["summary"] = rep.verdict;
    emit(doc);
    return rep.detected ? kExitDetected : kExitInconclusive;
}

int run_gen(const std::string& kind, int n, int na, int nb, std::optional<double> p,
            std::optional<double> f, int terms, std::uint64_t seed, const std::string& out) {
    json doc;
    if (kind == "bell") {
        const BipartiteState s = max_entangled(n);
        doc = state_to_json(s.rho(), s.na(), s.nb());
    } else if (kind == "werner") {
        if (!p) throw ParseError("gen werner: --p required");
        const BipartiteState s = werner(*p);
        doc = state_to_json(s.rho(), s.na(), s.nb());
    } else if (kind == "isotropic") {
        if (!f) throw ParseError("gen isotropic: --f required");
        const BipartiteState s = isotropic(*f, n);
        doc = state_to_json(s.rho(), s.na(), s.nb());
    } else if (kind == "random") {
        const Matrix rho = random_density(na * nb, seed);
        const BipartiteState s = validate_density(rho, na, nb);
        doc = state_to_json(s.rho(), s.na(), s.nb());
    } else if (kind == "product") {
        const BipartiteState s = product_state(random_density(na, seed), random_density(nb, seed + 1));
        doc = state_to_json(s.rho(), s.na(), s.nb());
    } else if (kind == "separable") {
        const BipartiteState s = random_separable(na, nb, terms, seed);
        doc = state_to_json(s.rho(), s.na(), s.nb());
    } else if (kind == "channel-depolarizing") {
        if (!p) throw ParseError("gen channel-depolarizing: --p required");
        doc = channel_to_json(depolarizing_channel(n, *p));
    } else {
        throw ParseError("unknown gen kind \"" + kind +
                         "\"; valid: bell, werner, isotropic, random, product, separable, "
                         "channel-depolarizing");
    }

    if (out.empty() || out == "-")
        emit(doc);
    else
        write_text_file(out, doc.dump(2) + "\n");
    return kExitInconclusive;
}

double env_decision_tol() {
    if (const char* env = std::getenv("SCHMIDT_SCOPE_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring unparseable SCHMIDT_SCOPE_TOL=\"" << env << "\"\n";
        }
    }
    return kDecisionTol;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"schmidt-scope: Schmidt-coefficient entanglement analysis"};
    app.require_subcommand(1);

    CommonOptions opt;
    opt.decision_tol = env_decision_tol();

    std::string path;
    std::string criteria_list;
    std::string batch_dir;
    std::string choi_out;
    int eb_l = 0;
    bool use_rank = false;

    std::string gen_kind;
    int gen_n = 2, gen_na = 2, gen_nb = 2, gen_terms = 10;
    double gen_p = 0.0, gen_f = 0.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--tol", opt.decision_tol,
                        "decision tolerance for strict inequalities (overrides SCHMIDT_SCOPE_TOL)");
        cmd->add_option("--rank-tol", opt.rank_tol, "relative Schmidt-rank threshold");
        cmd->add_flag("--no-validate", opt.no_validate, "skip density-operator validation");
    };

    CLI::App* schmidt_cmd = app.add_subcommand("schmidt", "Schmidt spectrum, rank and symmetric polynomials");
    schmidt_cmd->add_option("path", path, "state file (- or absent for stdin)");
    add_common(schmidt_cmd);

    CLI::App* check_cmd = app.add_subcommand("check", "run separability criteria");
    check_cmd->add_option("path", path, "state file (- or absent for stdin)");
    check_cmd->add_option("--criteria", criteria_list,
                          "comma list: rc, sympoly:l=<k>[:rank], theta:<radians>, zhang, "
                          "filter:<LA.json>,<LB.json>")
        ->required();
    check_cmd->add_option("--batch", batch_dir, "evaluate every *.json in a directory");
    add_common(check_cmd);

    CLI::App* channel_cmd = app.add_subcommand("channel", "channel analyses via the canonical state");
    channel_cmd->add_option("path", path, "channel file (- or absent for stdin)");
    CLI::Option* eb_opt = channel_cmd->add_option("--eb-check", eb_l, "entanglement-breaking check at degree l");
    channel_cmd->add_flag("--use-rank", use_rank, "rank-aware bound for --eb-check");
    CLI::Option* choi_opt = channel_cmd->add_option("--choi", choi_out, "write the canonical (Choi) state file");
    eb_opt->excludes(choi_opt);
    add_common(channel_cmd);

    CLI::App* gen_cmd = app.add_subcommand("gen", "generate state/channel files");
    gen_cmd->add_option("kind", gen_kind,
                        "bell | werner | isotropic | random | product | separable | channel-depolarizing")
        ->required();
    gen_cmd->add_option("--n", gen_n, "local dimension (bell, isotropic, channel-depolarizing)");
    gen_cmd->add_option("--na", gen_na, "local dimension of A");
    gen_cmd->add_option("--nb", gen_nb, "local dimension of B");
    CLI::Option* p_opt = gen_cmd->add_option("--p", gen_p, "mixing parameter");
    CLI::Option* f_opt = gen_cmd->add_option("--f", gen_f, "maximally entangled fraction");
    gen_cmd->add_option("--terms", gen_terms, "product terms for separable");
    gen_cmd->add_option("--seed", gen_seed, "PRNG seed");
    gen_cmd->add_option("-o,--output", gen_out, "output path (- or absent for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (schmidt_cmd->parsed()) return run_schmidt(path, opt);
        if (check_cmd->parsed()) return run_check(path, criteria_list, batch_dir, opt);
        if (channel_cmd->parsed()) {
            if (eb_opt->count() == 0 && choi_opt->count() == 0)
                throw ParseError("channel: one of --eb-check or --choi is required");
            return run_channel(path, eb_opt->count() ? std::optional<int>(eb_l) : std::nullopt,
                               use_rank, choi_out, opt);
        }
        return run_gen(gen_kind, gen_n, gen_na, gen_nb,
                       p_opt->count() ? std::optional<double>(gen_p) : std::nullopt,
                       f_opt->count() ? std::optional<double>(gen_f) : std::nullopt, gen_terms,
                       gen_seed, gen_out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DensityValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const KrausValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace scope::cli
