// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "wmod/monotone.hpp"

namespace wmod::cli {
namespace {

enum class Kind { Real, Complex, Count, Seed, Word, Flag, RealList };

struct FlagSpec {
    const char* name;
    Kind kind;
    const char* help;
};

struct CommandSpec {
    const char* name;
    const char* help;
    std::vector<FlagSpec> flags;
    const char* footer;
};

constexpr FlagSpec kK{"k", Kind::Complex, "Whittaker k (complex, Re k < 1/2 where the theory needs it)"};
constexpr FlagSpec kM{"m", Kind::Real, "Whittaker m (real)"};
constexpr FlagSpec kNu{"nu", Kind::Real, "Bessel order"};
constexpr FlagSpec kX{"x", Kind::Complex, "point x (or give --mod and --arg)"};
constexpr FlagSpec kMod{"mod", Kind::Real, "|x|"};
constexpr FlagSpec kArg{"arg", Kind::Real, "arg x in (-pi, pi]"};
constexpr FlagSpec kSamples{"samples", Kind::Count, "run a seeded sweep of this many samples"};
constexpr FlagSpec kSeed{"seed", Kind::Seed, "sweep seed (default 0)"};

const std::vector<CommandSpec>& commands() {
    static const std::vector<CommandSpec> specs = {
        {"eval-w", "Evaluate W_{k,m}(z)",
         {kK, kM, {"z", Kind::Complex, "argument z (or --mod/--arg)"}, kMod, kArg},
         "CSV columns: w_re,w_im,abs"},
        {"eval-k", "Evaluate K_nu(z)",
         {kNu, {"z", Kind::Complex, "argument z (or --mod/--arg)"}, kMod, kArg},
         "CSV columns: k_re,k_im,abs"},
        {"hyp2f1", "Evaluate 2F1(a, b; c; z)",
         {{"a", Kind::Complex, "a"}, {"b", Kind::Complex, "b"}, {"c", Kind::Complex, "c"},
          {"z", Kind::Complex, "argument, not on [1, inf)"}},
         "CSV columns: value_re,value_im"},
        {"identity-check", "Compare the Laplace-integral form with direct Whittaker products",
         {{"form", Kind::Word, "modulus | general | bessel (default modulus)"},
          kK,
          {"l", Kind::Complex, "second order parameter (general form)"},
          kM,
          kNu,
          kX,
          kMod,
          kArg,
          {"y", Kind::Complex, "second point (general form)"},
          {"t", Kind::Real, "Laplace variable t > 0"},
          kSamples,
          kSeed,
          {"max-residual", Kind::Real, "pass threshold on |lhs - rhs| / |lhs| (default 1e-7)"},
          {"max-arg", Kind::Real, "sweep bound on |arg x| (default pi - 0.2)"}},
         "CSV columns (sweep): index,k_re,k_im,l_re,l_im,m,x_re,x_im,y_re,y_im,t,lhs_re,lhs_im,rhs_re,rhs_im,"
         "rhs_err,residual,pass\n"
         "l and y are empty for the modulus and bessel forms; k is empty and m holds nu for bessel."},
        {"bound-check", "Check the quotient bounds for tau >= 1",
         {kK,
          kM,
          kNu,
          kX,
          kMod,
          kArg,
          {"tau", Kind::Real, "scale factor tau >= 1"},
          {"laplace", Kind::Flag, "also compare the Laplace integral at t = tau and t = 1"},
          kSamples,
          kSeed,
          {"family", Kind::Word, "sweep family: whittaker | bessel (default whittaker)"},
          {"tau-max", Kind::Real, "sweep upper limit for tau (default 20)"}},
         "CSV columns (sweep): index,k_re,k_im,m,x_re,x_im,tau,quotient_sq,bound,slack,status,laplace_at_one,"
         "laplace_at_tau,laplace_holds\nFor the bessel family k is empty and m holds nu."},
        {"pzero", "Largest negative zero of the sector hypergeometric factor",
         {kNu, kK, kM, {"floor", Kind::Real, "search floor (default -1e6)"}},
         "CSV columns: kind,p,bracket_lo,bracket_hi,theta,theta_is_exact_pi,grid_points_checked"},
        {"theta", "Sector angle for a given zero p < 0", {{"p", Kind::Real, "zero p < 0"}}, "CSV columns: theta"},
        {"certify-cm", "Tabulate (-1)^n f^(n)(t) and certify complete monotonicity",
         {kNu,
          kK,
          kM,
          kX,
          kMod,
          kArg,
          {"n-max", Kind::Count, "highest derivative order (default 12)"},
          {"t-grid", Kind::RealList, "comma separated t values (default 0.1,0.2,0.5,1,2,5,10)"},
          {"kmod", Kind::Flag, "certify t -> |K_nu(tx)|^2 instead (needs --nu, |arg x| <= pi/2)"}},
         "CSV columns: n,t,value,abs_err"},
        {"sweep", "Evaluate one quantity on an even grid of one parameter",
         {{"quantity", Kind::Word, "w | k | quotient | factor | moment"},
          {"over", Kind::Word, "arg | mod | tau | t | z"},
          {"from", Kind::Real, "grid start"},
          {"to", Kind::Real, "grid end"},
          {"steps", Kind::Count, "number of grid points (default 50)"},
          kK,
          kM,
          kNu,
          kX,
          kMod,
          kArg,
          {"tau", Kind::Real, "fixed tau (default 2)"},
          {"t", Kind::Real, "fixed t (default 1)"},
          {"n", Kind::Count, "moment order (default 0)"}},
         "CSV columns: index,<over>, then by quantity\n"
         "  w, k      value_re,value_im,abs     W_{k,m}(x) or K_nu(x)\n"
         "  quotient  quotient_sq,bound,status  |F(tau x)/F(x)|^2 against its bound\n"
         "  factor    value                     the sector hypergeometric factor at z\n"
         "  moment    value,abs_err             (-1)^n f^(n)(t)"},
    };
    return specs;
}

std::string key_of(const char* flag) {
    std::string k(flag);
    for (char& c : k) {
        if (c == '-') {
            c = '_';
        }
    }
    return k;
}

double parse_real(std::string_view text, std::string_view flag) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw UsageError("--" + std::string(flag) + ": expected a finite number, got '" + std::string(text) + "'");
    }
    return v;
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

bool has(const Json& p, const char* key) { return p.contains(key); }

// params key back to its command-line spelling
std::string flag_name(std::string_view key) {
    std::string f = "--" + std::string(key);
    std::replace(f.begin(), f.end(), '_', '-');
    return f;
}

void require(const Json& p, const char* key, const std::string& why) {
    if (!has(p, key)) {
        throw UsageError(flag_name(key) + " is required " + why);
    }
}

void forbid(const Json& p, const char* key, const std::string& why) {
    if (has(p, key)) {
        throw UsageError(flag_name(key) + " is not allowed " + why);
    }
}

void require_point(const Json& p, const char* name) {
    const bool direct = has(p, name);
    const bool polar = has(p, "mod") || has(p, "arg");
    if (direct && polar) {
        throw UsageError(flag_name(name) + " conflicts with --mod/--arg");
    }
    if (!direct && !(has(p, "mod") && has(p, "arg"))) {
        throw UsageError(flag_name(name) + " (or both --mod and --arg) is required");
    }
}

void require_word(const Json& p, const char* key, std::initializer_list<const char*> allowed) {
    const std::string v = p.at(key).get<std::string>();
    for (const char* a : allowed) {
        if (v == a) {
            return;
        }
    }
    throw UsageError(flag_name(key) + ": unknown value '" + v + "'");
}

// Whittaker (--k, --m) or Bessel (--nu) parameters, exactly one family.
void require_family(const Json& p) {
    if (has(p, "nu")) {
        forbid(p, "k", "together with --nu");
        forbid(p, "m", "together with --nu");
        return;
    }
    require(p, "k", "(or give --nu)");
    require(p, "m", "with --k");
}

void complete(RunConfig& cfg) {
    Json& p = cfg.params;
    const std::string& c = cfg.command;
    if (c == "eval-w") {
        require(p, "k", "");
        require(p, "m", "");
        require_point(p, "z");
    } else if (c == "eval-k") {
        require(p, "nu", "");
        require_point(p, "z");
    } else if (c == "hyp2f1") {
        for (const char* key : {"a", "b", "c", "z"}) {
            require(p, key, "");
        }
    } else if (c == "identity-check") {
        if (!has(p, "form")) {
            p["form"] = "modulus";
        }
        require_word(p, "form", {"modulus", "general", "bessel"});
        const std::string form = p["form"];
        if (!has(p, "max_residual")) {
            p["max_residual"] = 1e-7;
        }
        if (has(p, "samples")) {
            for (const char* key : {"k", "l", "m", "nu", "x", "mod", "arg", "y", "t"}) {
                forbid(p, key, "in sweep mode");
            }
            if (!has(p, "max_arg")) {
                p["max_arg"] = kPi - 0.2;
            }
            return;
        }
        forbid(p, "max_arg", "without --samples");
        forbid(p, "seed", "without --samples");
        require(p, "t", "");
        require_point(p, "x");
        if (form == "bessel") {
            require(p, "nu", "for the bessel form");
            for (const char* key : {"k", "l", "m", "y"}) {
                forbid(p, key, "for the bessel form");
            }
        } else {
            require(p, "k", "");
            require(p, "m", "");
            forbid(p, "nu", "for this form");
            if (form == "general") {
                require(p, "l", "for the general form");
                require(p, "y", "for the general form");
            } else {
                forbid(p, "l", "for the modulus form");
                forbid(p, "y", "for the modulus form");
            }
        }
    } else if (c == "bound-check") {
        if (has(p, "samples")) {
            for (const char* key : {"k", "m", "nu", "x", "mod", "arg", "tau"}) {
                forbid(p, key, "in sweep mode");
            }
            if (!has(p, "family")) {
                p["family"] = "whittaker";
            }
            require_word(p, "family", {"whittaker", "bessel"});
            if (!has(p, "tau_max")) {
                p["tau_max"] = 20.0;
            }
            if (!has(p, "laplace")) {
                p["laplace"] = false;
            }
            return;
        }
        for (const char* key : {"seed", "family", "tau_max"}) {
            forbid(p, key, "without --samples");
        }
        require_family(p);
        require_point(p, "x");
        require(p, "tau", "");
        if (!has(p, "laplace")) {
            p["laplace"] = false;
        }
        if (p["laplace"].get<bool>() && has(p, "nu")) {
            throw UsageError("--laplace applies to Whittaker parameters only");
        }
    } else if (c == "pzero") {
        require_family(p);
        if (!has(p, "floor")) {
            p["floor"] = kDefaultSearchFloor;
        }
    } else if (c == "theta") {
        require(p, "p", "");
    } else if (c == "certify-cm") {
        require_family(p);
        require_point(p, "x");
        if (!has(p, "n_max")) {
            p["n_max"] = kDefaultNMax;
        }
        if (!has(p, "t_grid")) {
            p["t_grid"] = default_t_grid();
        }
        if (!has(p, "kmod")) {
            p["kmod"] = false;
        }
        if (p["kmod"].get<bool>() && !has(p, "nu")) {
            throw UsageError("--kmod needs --nu");
        }
    } else if (c == "sweep") {
        require(p, "quantity", "");
        require(p, "over", "");
        require(p, "from", "");
        require(p, "to", "");
        require_word(p, "quantity", {"w", "k", "quotient", "factor", "moment"});
        require_word(p, "over", {"arg", "mod", "tau", "t", "z"});
        if (!has(p, "steps")) {
            p["steps"] = 50;
        }
        const std::string q = p["quantity"];
        const std::string over = p["over"];
        if (q == "k") {
            require(p, "nu", "for quantity k");
        } else if (q == "w") {
            require(p, "k", "for quantity w");
            require(p, "m", "for quantity w");
        } else {
            require_family(p);
        }
        if (over == "z") {
            if (q != "factor") {
                throw UsageError("--over z applies to quantity factor only");
            }
        } else {
            if (q == "factor") {
                throw UsageError("quantity factor sweeps --over z");
            }
            if (over == "tau" && q != "quotient") {
                throw UsageError("--over tau applies to quantity quotient only");
            }
            if (over == "t" && q != "moment") {
                throw UsageError("--over t applies to quantity moment only");
            }
            if (over == "arg" || over == "mod") {
                forbid(p, "x", "when sweeping the polar coordinates");
                forbid(p, over.c_str(), "when it is the swept parameter");
                const char* other = over == "arg" ? "mod" : "arg";
                if (!has(p, other)) {
                    p[other] = over == "arg" ? 1.0 : 0.0;
                }
            } else if (!has(p, "x") && !(has(p, "mod") && has(p, "arg"))) {
                p["x"] = complex_json(1.0);
            }
        }
        if (q == "quotient" && over != "tau" && !has(p, "tau")) {
            p["tau"] = 2.0;
        }
        if (q == "moment") {
            if (over != "t" && !has(p, "t")) {
                p["t"] = 1.0;
            }
            if (!has(p, "n")) {
                p["n"] = 0;
            }
        }
    }
}

}  // namespace

Complex parse_complex(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s += ch;
        }
    }
    const auto fail = [&]() -> UsageError {
        return UsageError("cannot parse complex number '" + std::string(text) + "'");
    };
    if (s.empty()) {
        throw fail();
    }
    const auto real = [&](std::string_view part) {
        try {
            return parse_real(part, "value");
        } catch (const UsageError&) {
            throw fail();
        }
    };
    if (s.front() == '(') {
        const auto comma = s.find(',');
        if (s.back() != ')' || comma == std::string::npos) {
            throw fail();
        }
        return {real(std::string_view(s).substr(1, comma - 1)),
                real(std::string_view(s).substr(comma + 1, s.size() - comma - 2))};
    }
    if (s.back() != 'i' && s.back() != 'j') {
        return {real(s), 0.0};
    }
    s.pop_back();
    // split at the last sign that is not part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const auto imag = [&](std::string_view part) {
        if (part.empty() || part == "+") {
            return 1.0;
        }
        if (part == "-") {
            return -1.0;
        }
        return real(part.front() == '+' ? part.substr(1) : part);
    };
    if (split == std::string::npos) {
        return {0.0, imag(s)};
    }
    const std::string_view sv(s);
    return {real(sv.substr(0, split)), imag(sv.substr(split))};
}

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Whittaker function moduli: evaluation, identity checks, bounds and monotonicity certificates",
                 "wmod"};
    app.require_subcommand(1);
    app.set_version_flag("--version", WMOD_VERSION);
    app.footer(
        "Exit codes: 0 ok/holds/certified, 1 violation, 2 inconclusive/unverifiable, 3 usage or domain error.\n"
        "WHITTAKER_MONO_THREADS caps sweep parallelism (0 or unset: all cores).");

    std::string format = "json";
    double rel_tol = TolerancePolicy{}.rel_tol;
    double abs_tol = TolerancePolicy{}.abs_tol;
    std::map<std::string, std::map<std::string, std::string>> raw;
    std::map<std::string, std::map<std::string, std::vector<std::string>>> lists;
    std::map<std::string, std::map<std::string, bool>> flags;

    for (const auto& spec : commands()) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        sub->footer(spec.footer);
        sub->add_option("--format", format, "json | csv | human")
            ->check(CLI::IsMember({"json", "csv", "human"}))
            ->capture_default_str();
        sub->add_option("--rel-tol", rel_tol, "relative tolerance")->capture_default_str();
        sub->add_option("--abs-tol", abs_tol, "absolute tolerance")->capture_default_str();
        for (const auto& f : spec.flags) {
            const std::string flag = std::string("--") + f.name;
            if (f.kind == Kind::Flag) {
                sub->add_flag(flag, flags[spec.name][f.name], f.help);
            } else if (f.kind == Kind::RealList) {
                sub->add_option(flag, lists[spec.name][f.name], f.help)->delimiter(',');
            } else {
                sub->add_option(flag, raw[spec.name][f.name], f.help);
            }
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::CallForVersion&) {
        throw HelpRequested(std::string(WMOD_VERSION) + "\n");
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig cfg;
    const CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    cfg.format = format == "csv" ? OutputFormat::Csv : format == "human" ? OutputFormat::Human : OutputFormat::Json;
    cfg.tol.rel_tol = rel_tol;
    cfg.tol.abs_tol = abs_tol;
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !std::isfinite(rel_tol) || !std::isfinite(abs_tol)) {
        throw UsageError("--rel-tol and --abs-tol must be positive");
    }

    const auto& spec = *std::find_if(commands().begin(), commands().end(),
                                     [&](const CommandSpec& s) { return cfg.command == s.name; });
    for (const auto& f : spec.flags) {
        const std::string flag = std::string("--") + f.name;
        if (chosen->get_option(flag)->count() == 0) {
            continue;
        }
        const std::string key = key_of(f.name);
        const std::string& text = raw[spec.name][f.name];
        switch (f.kind) {
            case Kind::Real:
                cfg.params[key] = parse_real(text, f.name);
                break;
            case Kind::Complex:
                try {
                    cfg.params[key] = complex_json(parse_complex(text));
                } catch (const UsageError& e) {
                    throw UsageError(flag + ": " + e.what());
                }
                break;
            case Kind::Count: {
                long long v = 0;
                const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
                if (ec != std::errc() || ptr != text.data() + text.size() || v < 0) {
                    throw UsageError(flag + ": expected a nonnegative integer, got '" + text + "'");
                }
                cfg.params[key] = v;
                break;
            }
            case Kind::Seed: {
                std::uint64_t v = 0;
                const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
                if (ec != std::errc() || ptr != text.data() + text.size()) {
                    throw UsageError(flag + ": expected an unsigned 64-bit integer, got '" + text + "'");
                }
                cfg.seed = v;
                cfg.params[key] = v;
                break;
            }
            case Kind::Word:
                cfg.params[key] = text;
                break;
            case Kind::Flag:
                cfg.params[key] = flags[spec.name][f.name];
                break;
            case Kind::RealList: {
                Json values = Json::array();
                for (const auto& item : lists[spec.name][f.name]) {
                    values.push_back(parse_real(item, f.name));
                }
                cfg.params[key] = values;
                break;
            }
        }
    }
    complete(cfg);
    return cfg;
}

}  // namespace wmod::cli
