// Command-line front end: evaluate library functions on JSON arguments, run
// named verification sweeps, and emit plot-ready CSV tables.
//
// Exit codes: 0 = success / all checks passed, 1 = a sweep found violations,
// 2 = usage or domain error.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mvgamma/distributions.hpp"
#include "mvgamma/json_io.hpp"
#include "mvgamma/monotonicity.hpp"
#include "mvgamma/multivariate_gamma.hpp"
#include "mvgamma/scalar_special.hpp"
#include "mvgamma/sweeps.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("MVG_SEED")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return parsed;
        throw std::invalid_argument("MVG_SEED must be an unsigned integer, got \"" +
                                    std::string(env) + "\"");
    }
    return 1;
}

// Inline JSON if the value looks like it, otherwise a file path.
json load_json_arg(const std::string& value) {
    if (!value.empty() && (value.front() == '{' || value.front() == '[')) return json::parse(value);
    std::ifstream in(value);
    if (!in) throw std::invalid_argument("cannot open \"" + value + "\"");
    json out;
    in >> out;
    return out;
}

mvg::QInstance instance_from_args(const json& args) {
    return mvg::instance_from_json(args.contains("instance") ? args.at("instance") : args);
}

double num(const json& args, const char* field) {
    if (!args.contains(field))
        throw std::invalid_argument(std::string("missing argument \"") + field + "\"");
    return args.at(field).get<double>();
}

int integer(const json& args, const char* field) {
    if (!args.contains(field))
        throw std::invalid_argument(std::string("missing argument \"") + field + "\"");
    return args.at(field).get<int>();
}

json value_obj(double v) { return json{{"value", v}}; }

mvg::LemmaArgs lemma_args_from_json(const json& args) {
    return mvg::LemmaArgs(num(args, "beta"),
                          mvg::SimplexPoint(args.at("u").get<std::vector<double>>()),
                          num(args, "y"));
}

using EvalHandler = std::function<json(const json&)>;

const std::map<std::string, EvalHandler>& eval_registry() {
    static const std::map<std::string, EvalHandler> registry = {
        {"ln_gamma", [](const json& a) { return value_obj(mvg::ln_gamma(num(a, "x"))); }},
        {"digamma", [](const json& a) { return value_obj(mvg::digamma(num(a, "x"))); }},
        {"polygamma",
         [](const json& a) {
             return value_obj(mvg::polygamma(mvg::PolyOrder(integer(a, "k")), num(a, "x")));
         }},
        {"ln_gamma_m",
         [](const json& a) { return value_obj(mvg::ln_gamma_m(integer(a, "m"), num(a, "z"))); }},
        {"psi_m",
         [](const json& a) {
             return value_obj(
                 mvg::psi_m(mvg::PolyOrder(integer(a, "k")), integer(a, "m"), num(a, "z")));
         }},
        {"lemma_J", [](const json& a) { return value_obj(mvg::lemma_J(lemma_args_from_json(a))); }},
        {"H",
         [](const json& a) {
             return value_obj(mvg::proof_H(num(a, "y"), num(a, "beta"), num(a, "u")));
         }},
        {"phi",
         [](const json& a) {
             const auto check = mvg::proof_phi_superadditive(num(a, "y"), num(a, "beta"),
                                                             num(a, "u1"), num(a, "u2"));
             return json{{"value", {{"lhs", check.lhs}, {"rhs", check.rhs}, {"holds", check.holds}}}};
         }},
        {"g",
         [](const json& a) {
             return value_obj(mvg::proof_g(num(a, "s"), num(a, "y"), num(a, "beta")));
         }},
        {"lnQ",
         [](const json& a) { return value_obj(mvg::ln_Q(instance_from_args(a), num(a, "x"))); }},
        {"q",
         [](const json& a) {
             return value_obj(std::exp(mvg::ln_Q(instance_from_args(a), num(a, "x"))));
         }},
        {"lnQ_deriv",
         [](const json& a) {
             return value_obj(
                 mvg::ln_Q_derivative(instance_from_args(a), num(a, "x"), integer(a, "order")));
         }},
        {"R",
         [](const json& a) { return value_obj(mvg::ln_R(instance_from_args(a), num(a, "x"))); }},
        {"limit",
         [](const json& a) { return value_obj(mvg::limit_neg_lnQ_prime(instance_from_args(a))); }},
        {"logdet",
         [](const json& a) {
             return value_obj(mvg::logdet_pd(mvg::matrix_from_json(a.at("matrix"))));
         }},
        {"minkowski",
         [](const json& a) {
             const auto check = mvg::minkowski_det_check(mvg::matrix_from_json(a.at("A")),
                                                         mvg::matrix_from_json(a.at("B")));
             return json{{"value", {{"lhs", check.lhs}, {"rhs", check.rhs}, {"holds", check.holds}}}};
         }},
        {"dirichlet_logpdf",
         [](const json& a) {
             const double v =
                 mvg::matrix_dirichlet_logpdf(mvg::dirichlet_params_from_json(a.at("params")),
                                              mvg::partition_from_json(a.at("partition")));
             return json{{"value", v}, {"logpdf", v}};
         }},
        {"multinomial_logpmf",
         [](const json& a) {
             const double v = mvg::generalized_multinomial_logpmf(
                 mvg::multinomial_params_from_json(a.at("params")),
                 mvg::partition_from_json(a.at("partition")));
             return json{{"value", v}, {"logpdf", v}};
         }},
        {"multinomial_ref",
         [](const json& a) {
             return value_obj(mvg::multinomial_logpmf_reference(
                 integer(a, "n"), a.at("k").get<std::vector<int>>(),
                 a.at("p").get<std::vector<double>>()));
         }},
    };
    return registry;
}

int run_eval(const std::string& function, const std::string& args_text) {
    const auto& registry = eval_registry();
    const auto it = registry.find(function);
    if (it == registry.end()) {
        std::cerr << "eval: unknown function \"" << function << "\"; known:";
        for (const auto& [name, handler] : registry) std::cerr << ' ' << name;
        std::cerr << '\n';
        return kExitUsage;
    }
    const json args = args_text.empty() ? json::object() : json::parse(args_text);
    std::cout << it->second(args).dump() << '\n';
    return kExitPass;
}

int run_verify(const std::string& claim_name, std::uint64_t trials,
               std::optional<std::uint64_t> seed, int max_order, int workers,
               const std::vector<std::string>& tolerance_specs, const std::string& out_path,
               const std::string& instance_spec) {
    const auto claim = mvg::claim_from_name(claim_name);
    if (!claim) {
        std::cerr << "verify: unknown claim \"" << claim_name << "\"; known:";
        for (const auto& name : mvg::all_claim_names()) std::cerr << ' ' << name;
        std::cerr << '\n';
        return kExitUsage;
    }
    mvg::SweepConfig config;
    config.claim = *claim;
    config.trials = trials;
    config.seed = seed ? *seed : default_seed();
    config.max_order = max_order;
    config.workers = workers;
    config.out_path = out_path;
    for (const auto& spec : tolerance_specs) {
        const auto pos = spec.find('=');
        if (pos == std::string::npos)
            throw std::invalid_argument("--tolerance expects name=value, got \"" + spec + "\"");
        config.tolerances[spec.substr(0, pos)] = std::stod(spec.substr(pos + 1));
    }
    if (!instance_spec.empty())
        config.instance = mvg::instance_from_json(load_json_arg(instance_spec));

    const mvg::VerificationReport report = mvg::run_sweep(config);
    const std::string serialized = report.to_json().dump(2);
    if (out_path.empty()) {
        std::cout << serialized << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "verify: cannot write \"" << out_path << "\"\n";
            return kExitUsage;
        }
        out << serialized << '\n';
        std::printf("%s: trials=%" PRIu64 " violations=%" PRIu64
                    " worst_margin=%.6g near_zero=%" PRIu64 " -> %s\n",
                    report.claim.c_str(), report.trials, report.violations, report.worst_margin,
                    report.near_zero_count, out_path.c_str());
    }
    return report.passed() ? kExitPass : kExitViolation;
}

// Axis specification: "lo:hi:count" (inclusive, linear) or a single number.
struct AxisSpec {
    std::string name;
    std::vector<double> values;
    bool swept = false;
};

AxisSpec parse_axis(const std::string& name, const std::string& text) {
    AxisSpec axis;
    axis.name = name;
    if (text.find(':') == std::string::npos) {
        axis.values.push_back(std::stod(text));
        return axis;
    }
    std::istringstream in(text);
    std::string lo_text, hi_text, count_text;
    if (!std::getline(in, lo_text, ':') || !std::getline(in, hi_text, ':') ||
        !std::getline(in, count_text))
        throw std::invalid_argument("axis \"" + name + "\": expected lo:hi:count, got \"" + text +
                                    "\"");
    const double lo = std::stod(lo_text);
    const double hi = std::stod(hi_text);
    const int count = std::stoi(count_text);
    if (count < 1) throw std::invalid_argument("axis \"" + name + "\": count must be >= 1");
    axis.swept = true;
    axis.values.resize(static_cast<std::size_t>(count));
    if (count == 1) {
        axis.values[0] = lo;
    } else {
        const double step = (hi - lo) / (count - 1);
        for (int i = 0; i < count; ++i) axis.values[static_cast<std::size_t>(i)] = lo + step * i;
        axis.values.back() = hi;
    }
    return axis;
}

void append_number(std::string& line, double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    line += buffer;
}

int run_table(const std::string& function, const std::map<std::string, std::string>& raw_axes,
              const std::string& u_list, const std::string& instance_spec,
              const std::string& out_path) {
    // Parameter slots per function; the first matching raw axis becomes a
    // CSV column when it sweeps.
    std::vector<std::string> slots;
    bool needs_instance = false;
    if (function == "lnQ" || function == "q" || function == "R") {
        slots = {"x"};
        needs_instance = true;
    } else if (function == "lnQ_deriv") {
        slots = {"x", "order"};
        needs_instance = true;
    } else if (function == "lemma_J") {
        slots = {"y", "beta"};
    } else if (function == "H") {
        slots = {"y", "beta", "u"};
    } else if (function == "g") {
        slots = {"s", "y", "beta"};
    } else {
        std::cerr << "table: unknown function \"" << function
                  << "\"; known: lnQ q R lnQ_deriv lemma_J H g\n";
        return kExitUsage;
    }

    std::optional<mvg::QInstance> instance;
    if (needs_instance) {
        if (instance_spec.empty())
            throw std::invalid_argument("table: function \"" + function + "\" needs --instance");
        instance = mvg::instance_from_json(load_json_arg(instance_spec));
    }
    std::optional<mvg::SimplexPoint> u_point;
    if (function == "lemma_J") {
        if (u_list.empty()) throw std::invalid_argument("table: lemma_J needs --u v1,v2,...");
        std::vector<double> coords;
        std::istringstream in(u_list);
        std::string item;
        while (std::getline(in, item, ',')) coords.push_back(std::stod(item));
        u_point = mvg::SimplexPoint(coords);
    }

    std::vector<AxisSpec> axes;
    int swept = 0;
    for (const auto& slot : slots) {
        const auto it = raw_axes.find(slot);
        if (it == raw_axes.end() || it->second.empty()) {
            if (slot == "beta") {
                axes.push_back(AxisSpec{"beta", {0.0}, false});
                continue;
            }
            if (slot == "order") {
                axes.push_back(AxisSpec{"order", {1.0}, false});
                continue;
            }
            throw std::invalid_argument("table: function \"" + function + "\" needs --" + slot);
        }
        axes.push_back(parse_axis(slot, it->second));
        if (axes.back().swept) ++swept;
    }
    if (swept == 0) throw std::invalid_argument("table: need at least one swept axis (lo:hi:count)");
    if (swept > 2) throw std::invalid_argument("table: at most two swept axes are supported");

    auto evaluate = [&](const std::map<std::string, double>& args) -> double {
        if (function == "lnQ") return mvg::ln_Q(*instance, args.at("x"));
        if (function == "q") return std::exp(mvg::ln_Q(*instance, args.at("x")));
        if (function == "R") return mvg::ln_R(*instance, args.at("x"));
        if (function == "lnQ_deriv")
            return mvg::ln_Q_derivative(*instance, args.at("x"),
                                        static_cast<int>(args.at("order")));
        if (function == "lemma_J")
            return mvg::lemma_J(mvg::LemmaArgs(args.at("beta"), *u_point, args.at("y")));
        if (function == "H") return mvg::proof_H(args.at("y"), args.at("beta"), args.at("u"));
        return mvg::proof_g(args.at("s"), args.at("y"), args.at("beta"));
    };

    std::string csv;
    for (const auto& axis : axes)
        if (axis.swept) {
            csv += axis.name;
            csv += ',';
        }
    csv += "value\n";

    // Cross product with the later axis fastest.
    std::vector<std::size_t> cursor(axes.size(), 0);
    for (;;) {
        std::map<std::string, double> args;
        for (std::size_t i = 0; i < axes.size(); ++i) args[axes[i].name] = axes[i].values[cursor[i]];
        std::string line;
        for (std::size_t i = 0; i < axes.size(); ++i)
            if (axes[i].swept) {
                append_number(line, axes[i].values[cursor[i]]);
                line += ',';
            }
        append_number(line, evaluate(args));
        csv += line;
        csv += '\n';
        std::size_t level = axes.size();
        while (level > 0) {
            --level;
            if (++cursor[level] < axes[level].values.size()) break;
            cursor[level] = 0;
            if (level == 0) {
                if (out_path.empty()) {
                    std::cout << csv;
                } else {
                    std::ofstream out(out_path);
                    if (!out) {
                        std::cerr << "table: cannot write \"" << out_path << "\"\n";
                        return kExitUsage;
                    }
                    out << csv;
                }
                return kExitPass;
            }
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multivariate gamma ratio toolkit: evaluators and verification sweeps"};
    app.require_subcommand(1);

    std::string eval_function;
    std::string eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a function on JSON arguments");
    eval_cmd->add_option("function", eval_function, "Function name")->required();
    eval_cmd->add_option("args", eval_args, "JSON argument object");

    std::string verify_claim;
    std::uint64_t trials = 1000;
    std::optional<std::uint64_t> seed;
    int max_order = 8;
    int workers = 0;
    std::vector<std::string> tolerance_specs;
    std::string out_path;
    std::string instance_spec;
    auto* verify_cmd = app.add_subcommand("verify", "Run a named verification sweep");
    verify_cmd->add_option("claim", verify_claim, "Claim name")->required();
    verify_cmd->add_option("--trials", trials, "Number of trials");
    verify_cmd->add_option("--seed", seed, "Sweep seed (default: MVG_SEED or 1)");
    verify_cmd->add_option("--max-order", max_order, "Highest derivative order (lcm)");
    verify_cmd->add_option("--workers", workers, "Worker threads (0 = auto)");
    verify_cmd->add_option("--tolerance", tolerance_specs, "Override as name=value");
    verify_cmd->add_option("--out", out_path, "Report output path (default: stdout)");
    verify_cmd->add_option("--instance", instance_spec, "Pin the instance (file or inline JSON)");

    std::string table_function;
    std::map<std::string, std::string> table_axes;
    std::string u_list;
    std::string table_instance;
    std::string table_out;
    auto* table_cmd = app.add_subcommand("table", "Emit a CSV table over one or two axes");
    table_cmd->add_option("function", table_function, "Function name")->required();
    table_cmd->add_option("--x", table_axes["x"], "x axis: lo:hi:count or value");
    table_cmd->add_option("--y", table_axes["y"], "y axis: lo:hi:count or value");
    table_cmd->add_option("--s", table_axes["s"], "s axis: lo:hi:count or value");
    table_cmd->add_option("--beta", table_axes["beta"], "beta: lo:hi:count or value");
    table_cmd->add_option("--order", table_axes["order"], "derivative order: lo:hi:count or value");
    table_cmd->add_option("--u", u_list, "simplex coordinates v1,v2,... (lemma_J) or value (H)");
    table_cmd->add_option("--instance", table_instance, "Q instance (file or inline JSON)");
    table_cmd->add_option("--out", table_out, "CSV output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(eval_function, eval_args);
        if (verify_cmd->parsed())
            return run_verify(verify_claim, trials, seed, max_order, workers, tolerance_specs,
                              out_path, instance_spec);
        if (table_cmd->parsed()) {
            if (table_function == "H" && !u_list.empty() && table_axes["u"].empty())
                table_axes["u"] = u_list;
            return run_table(table_function, table_axes, u_list, table_instance, table_out);
        }
    } catch (const std::exception& e) {
        std::cerr << argv[0] << ": " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
