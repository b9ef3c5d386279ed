#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "liouville/artin.hpp"
#include "liouville/constructions.hpp"
#include "liouville/debruijn.hpp"
#include "liouville/dimension.hpp"
#include "liouville/errors.hpp"
#include "liouville/exact.hpp"

namespace liouville::cli {

namespace {

using json = nlohmann::json;

struct RunConfig {
    std::string construction;
    unsigned base = 2;
    std::string dilution;
    std::optional<std::uint64_t> digits;
    std::optional<unsigned> stage;
    unsigned stages = 0;
    unsigned m_max = 4;
    std::string prefixes;
    bool json = false;
    bool from_stdin = false;
    std::string output_path;
    std::uint64_t max_digits = kDefaultDigitBudget;
    std::optional<unsigned> max_stage;
    // debruijn
    unsigned k = 2;
    unsigned n = 1;
    // artin
    std::string bases;
    std::uint64_t limit = 0;
    std::string schedule;
    std::optional<unsigned> emit_base;
};

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InvalidArgument(std::string(what) + ": '" + std::string(text) + "' is not a non-negative integer");
    }
    return v;
}

std::vector<std::uint64_t> parse_list(const std::string& text, std::string_view what) {
    std::vector<std::uint64_t> out;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        out.push_back(parse_u64(rest.substr(0, comma), what));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (out.empty()) throw InvalidArgument(std::string(what) + " must not be empty");
    return out;
}

/// Integers past 64 bits become decimal strings.
json big_json(const BigInt& v) {
    if (fits_u64(v)) return to_u64(v);
    if (sgn(v) < 0 && mpz_fits_slong_p(v.get_mpz_t())) return static_cast<std::int64_t>(v.get_si());
    return to_string(v);
}

ConstructionRecipe recipe_from(const RunConfig& cfg) {
    ConstructionRecipe r;
    r.kind = parse_construction_kind(cfg.construction);
    r.base = cfg.base;
    if (!cfg.dilution.empty()) r.dilution = parse_dilution(cfg.dilution);
    r.validate();
    return r;
}

StageLimits limits_from(const RunConfig& cfg) {
    StageLimits limits;
    limits.max_digits = cfg.max_digits;
    if (cfg.max_stage) {
        limits.max_stage_alpha = *cfg.max_stage;
        limits.max_stage_factorial = *cfg.max_stage;
    }
    return limits;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& payload) {
    if (cfg.output_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) throw InvalidArgument("cannot open output file '" + cfg.output_path + "'");
    file << payload;
}

std::string json_payload(const json& j) { return j.dump() + "\n"; }

// --- subcommands ------------------------------------------------------------

std::string cmd_gen(const RunConfig& cfg) {
    const ConstructionRecipe recipe = recipe_from(cfg);
    if (cfg.digits.has_value() == cfg.stage.has_value()) {
        throw InvalidArgument("gen needs exactly one of --digits or --stage");
    }
    std::uint64_t length = 0;
    if (cfg.digits) {
        length = *cfg.digits;
    } else {
        if (*cfg.stage == 0) throw InvalidArgument("--stage must be >= 1");
        const BigInt end = stage_boundary(recipe, *cfg.stage);
        if (end > cfg.max_digits) {
            throw BudgetExceeded("stage " + std::to_string(*cfg.stage) + " ends at digit " + to_string(end) +
                                 ", budget is " + std::to_string(cfg.max_digits));
        }
        length = to_u64(end);
    }
    return to_ascii(take_prefix(recipe, length, cfg.max_digits)) + "\n";
}

json report_json(const VerificationReport& r) {
    return json{{"stage", r.stage},
                {"q_bits", r.q_bits},
                {"agreement", big_json(r.agreement)},
                {"required", big_json(r.required)},
                {"holds", r.holds},
                {"digits_agree", r.digits_agree},
                {"certificate", std::string(to_string(r.certificate))}};
}

std::string cmd_verify(const RunConfig& cfg) {
    const ConstructionRecipe recipe = recipe_from(cfg);
    if (cfg.stages < recipe.first_stage()) {
        throw InvalidArgument("--stages must be >= " + std::to_string(recipe.first_stage()) + " for " +
                              recipe.name());
    }
    const StageLimits limits = limits_from(cfg);
    json reports = json::array();
    std::ostringstream text;
    text << "# " << recipe.name() << ": Liouville check |x - p/q| < 1/q^i per stage\n";
    for (unsigned i = recipe.first_stage(); i <= cfg.stages; ++i) {
        const VerificationReport r = verify_liouville_stage(recipe, i, limits);
        reports.push_back(report_json(r));
        text << "stage " << r.stage << "  q_bits=" << r.q_bits << "  agreement=" << to_string(r.agreement)
             << "  required=" << to_string(r.required) << "  holds=" << (r.holds ? "yes" : "no") << " ("
             << to_string(r.certificate) << ")\n";
    }
    return cfg.json ? json_payload(reports) : text.str();
}

json entropy_json(const EntropyReport& report) {
    json samples = json::array();
    for (const auto& s : report.samples) {
        samples.push_back({{"prefix_length", s.prefix_length},
                           {"m", s.m},
                           {"mode", std::string(to_string(s.mode))},
                           {"windows", s.windows},
                           {"entropy_bits", s.entropy_bits},
                           {"normalized_rate", s.normalized_rate}});
    }
    json summaries = json::array();
    for (const auto& s : report.summaries) {
        summaries.push_back({{"m", s.m},
                             {"mode", std::string(to_string(s.mode))},
                             {"lower_estimate", s.lower_estimate},
                             {"upper_estimate", s.upper_estimate}});
    }
    return json{{"source", report.source},
                {"base", report.base},
                {"m_max", report.m_max},
                {"prefix_lengths", report.prefix_lengths},
                {"samples", samples},
                {"summaries", summaries},
                {"estimates",
                 {{"dimension", report.dimension_estimate},
                  {"strong_dimension", report.strong_dimension_estimate},
                  {"sliding_dimension", report.sliding_dimension_estimate},
                  {"note", "min/max over sampled prefixes; finite-data estimates of liminf/limsup"}}}};
}

std::string entropy_text(const EntropyReport& report) {
    std::ostringstream text;
    text << "# " << report.source << " (base " << report.base << "): normalized block-entropy rates\n";
    text << "# prefix_length m mode rate\n";
    for (const auto& s : report.samples) {
        text << s.prefix_length << ' ' << s.m << ' ' << to_string(s.mode) << ' ' << s.normalized_rate << '\n';
    }
    text << "# estimates (finite data): dimension=" << report.dimension_estimate
         << " strong_dimension=" << report.strong_dimension_estimate
         << " sliding_dimension=" << report.sliding_dimension_estimate << '\n';
    return text.str();
}

std::string cmd_fsdim(const RunConfig& cfg) {
    const ConstructionRecipe recipe = recipe_from(cfg);
    std::vector<std::uint64_t> prefixes;
    if (!cfg.prefixes.empty()) {
        prefixes = parse_list(cfg.prefixes, "--prefixes");
    } else {
        constexpr std::uint64_t kDefaultSpan = std::uint64_t{1} << 22;
        prefixes = stage_prefix_lengths(recipe, std::min(cfg.max_digits, kDefaultSpan));
        // Stages shorter than the largest block carry no windows.
        std::erase_if(prefixes, [&](std::uint64_t p) { return p < cfg.m_max; });
        if (prefixes.empty()) throw InvalidArgument("no stage boundary fits the digit budget");
    }
    const EntropyReport report = entropy_rate_profile(recipe, cfg.m_max, prefixes, cfg.max_digits);
    return cfg.json ? json_payload(entropy_json(report)) : entropy_text(report);
}

std::string cmd_analyze(const RunConfig& cfg, std::istream& in) {
    if (!cfg.from_stdin) throw InvalidArgument("analyze reads digits from standard input; pass --stdin");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    if (text.size() > cfg.max_digits) {
        throw BudgetExceeded("input of " + std::to_string(text.size()) + " digits exceeds budget of " +
                             std::to_string(cfg.max_digits));
    }
    const Digits digits = from_ascii(text, cfg.base);
    if (digits.empty()) throw InvalidArgument("no digits on standard input");
    std::vector<std::uint64_t> prefixes = cfg.prefixes.empty()
                                              ? std::vector<std::uint64_t>{digits.size()}
                                              : parse_list(cfg.prefixes, "--prefixes");
    const EntropyReport report = entropy_rate_profile(digits, cfg.base, cfg.m_max, prefixes, "stdin");
    return cfg.json ? json_payload(entropy_json(report)) : entropy_text(report);
}

std::string cmd_debruijn(const RunConfig& cfg) {
    const std::uint64_t cap = std::min<std::uint64_t>(cfg.max_digits, kDefaultSymbolCap);
    return to_ascii(generate_debruijn(cfg.k, cfg.n, cap).digits) + "\n";
}

std::string cmd_artin_find(const RunConfig& cfg) {
    const auto bases = parse_list(cfg.bases, "--bases");
    const auto primes = artin::find_simultaneous_primes(bases, cfg.limit);
    if (cfg.json) return json_payload(json{{"bases", bases}, {"limit", cfg.limit}, {"primes", primes}});
    std::ostringstream text;
    for (auto p : primes) text << p << '\n';
    return text.str();
}

std::string cmd_artin_gamma(const RunConfig& cfg) {
    auto bases = parse_list(cfg.bases, "--bases");
    std::optional<std::vector<std::uint64_t>> schedule;
    if (!cfg.schedule.empty()) schedule = parse_list(cfg.schedule, "--f");
    const auto recipe = artin::make_gamma_recipe(bases, cfg.stages, schedule);
    const auto build = artin::build_gamma(recipe);

    const unsigned emit_base = cfg.emit_base.value_or(static_cast<unsigned>(recipe.bases.front()));
    const std::uint64_t count = cfg.digits.value_or(0);
    const Digits digits = count > 0 ? artin::gamma_digits(build, emit_base, count, cfg.max_digits) : Digits{};

    json stages = json::array();
    for (std::size_t i = 0; i < build.stages.size(); ++i) {
        const auto& st = build.stages[i];
        const auto& v = build.verification[i];
        stages.push_back({{"stage", st.index},
                          {"prime", st.prime},
                          {"repetitions", st.repetitions},
                          {"offset", st.offset},
                          {"end", st.end},
                          {"block", big_json(st.block)},
                          {"q_bits", v.q_bits},
                          {"holds", v.holds}});
    }
    json stability = json::array();
    for (const auto& s : build.stability) {
        stability.push_back(
            {{"stage", s.stage}, {"base", s.base}, {"checked_digits", s.checked_digits}, {"stable", s.stable}});
    }
    json doc{{"bases", recipe.bases},
             {"primes", recipe.primes},
             {"schedule", recipe.schedule},
             {"stages", stages},
             {"digit_stability", build.all_stable() ? "pass" : "fail"},
             {"stability", stability},
             {"product_base_blocks", build.product_base_blocks_ok}};
    if (count > 0) doc["digits"] = {{"base", emit_base}, {"value", to_ascii(digits)}};
    if (cfg.json) return json_payload(doc);

    std::ostringstream text;
    text << "# gamma over bases";
    for (auto b : recipe.bases) text << ' ' << b;
    text << "\n";
    for (std::size_t i = 0; i < build.stages.size(); ++i) {
        const auto& st = build.stages[i];
        text << "stage " << st.index << "  p=" << st.prime << "  f=" << st.repetitions
             << "  q_bits=" << build.verification[i].q_bits
             << "  holds=" << (build.verification[i].holds ? "yes" : "no") << '\n';
    }
    text << "digit stability: " << (build.all_stable() ? "pass" : "fail") << '\n';
    if (count > 0) text << to_ascii(digits) << '\n';
    return text.str();
}

std::uint64_t budget_from_env() {
    const char* raw = std::getenv(kBudgetEnv);
    if (raw == nullptr || *raw == '\0') return kDefaultDigitBudget;
    const std::uint64_t v = parse_u64(raw, kBudgetEnv);
    if (v == 0) throw InvalidArgument(std::string(kBudgetEnv) + " must be positive");
    return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg.max_digits = budget_from_env();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    }

    CLI::App app{"Liouville digit streams: generation, exact verification, block-entropy analysis",
                 "liouville"};
    app.require_subcommand(1);
    app.add_option("-o,--output", cfg.output_path, "Write the payload to FILE instead of stdout");
    app.add_option("--max-digits", cfg.max_digits, "Digit budget (overrides LIOUVILLE_MAX_DIGITS)")
        ->check(CLI::PositiveNumber);

    auto add_recipe = [&](CLI::App* sub) {
        sub->add_option("--construction", cfg.construction, "psi1 | psi2 | alpha | diluted")->required();
        sub->add_option("--base", cfg.base, "Digit alphabet size for alpha/diluted")->capture_default_str();
        sub->add_option("--dilution", cfg.dilution, "M/N in lowest terms (diluted only)");
    };

    auto* gen = app.add_subcommand("gen", "Emit digits of a construction");
    add_recipe(gen);
    gen->add_option("--digits", cfg.digits, "Number of digits");
    gen->add_option("--stage", cfg.stage, "Emit exactly stages 1..I");

    auto* verify = app.add_subcommand("verify", "Exact Liouville check per stage");
    add_recipe(verify);
    verify->add_option("--stages", cfg.stages, "Last stage to verify")->required();
    verify->add_option("--max-stage", cfg.max_stage, "Raise the stage cap");
    verify->add_flag("--json", cfg.json, "JSON output");

    auto* fsdim = app.add_subcommand("fsdim", "Block-entropy rates of a construction");
    add_recipe(fsdim);
    fsdim->add_option("--m-max", cfg.m_max, "Largest block size")->capture_default_str();
    fsdim->add_option("--prefixes", cfg.prefixes, "Comma-separated ascending prefix lengths");
    fsdim->add_flag("--json", cfg.json, "JSON output");

    auto* analyze = app.add_subcommand("analyze", "Block-entropy rates of digits read from stdin");
    analyze->add_flag("--stdin", cfg.from_stdin, "Read ASCII digits from standard input");
    analyze->add_option("--base", cfg.base, "Digit alphabet size")->required();
    analyze->add_option("--m-max", cfg.m_max, "Largest block size")->capture_default_str();
    analyze->add_option("--prefixes", cfg.prefixes, "Comma-separated ascending prefix lengths");
    analyze->add_flag("--json", cfg.json, "JSON output");

    auto* debruijn = app.add_subcommand("debruijn", "Print the canonical de Bruijn sequence B(k,n)");
    debruijn->add_option("--k", cfg.k, "Alphabet size")->required();
    debruijn->add_option("--n", cfg.n, "Order")->required();

    auto* artin_cmd = app.add_subcommand("artin", "Primitive roots and the multi-base construction");
    artin_cmd->require_subcommand(1);
    auto* find = artin_cmd->add_subcommand("find", "Primes having every base as a primitive root");
    find->add_option("--bases", cfg.bases, "Comma-separated bases")->required();
    find->add_option("--limit", cfg.limit, "Search bound")->required();
    find->add_flag("--json", cfg.json, "JSON output");
    auto* gamma = artin_cmd->add_subcommand("gamma", "Build the multi-base Liouville construction");
    gamma->add_option("--bases", cfg.bases, "Comma-separated bases")->required();
    cfg.stages = 3;
    gamma->add_option("--stages", cfg.stages, "Number of stages")->capture_default_str();
    gamma->add_option("--f", cfg.schedule, "Comma-separated repetitions f(1..stages)");
    gamma->add_option("--emit-base", cfg.emit_base, "Base for emitted digits");
    gamma->add_option("--digits", cfg.digits, "Number of digits to emit");
    gamma->add_flag("--json", cfg.json, "JSON output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kValidationError;
    }

    try {
        std::string payload;
        if (*gen) payload = cmd_gen(cfg);
        else if (*verify) payload = cmd_verify(cfg);
        else if (*fsdim) payload = cmd_fsdim(cfg);
        else if (*analyze) payload = cmd_analyze(cfg, in);
        else if (*debruijn) payload = cmd_debruijn(cfg);
        else if (*find) payload = cmd_artin_find(cfg);
        else if (*gamma) payload = cmd_artin_gamma(cfg);
        emit(cfg, out, payload);
    } catch (const BudgetExceeded& e) {
        err << "error: budget exhausted: " << e.what() << '\n';
        return kBudgetExhausted;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    }
    return kOk;
}

}  // namespace liouville::cli
