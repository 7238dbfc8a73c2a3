#pragma once

// Command-line front end. Exit statuses: 0 success, 1 internal failure or failed
// verification, 2 invalid arguments or input, 3 hypothesis violation.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "exptk/bounds.hpp"
#include "exptk/chart_io.hpp"
#include "exptk/resolution.hpp"
#include "exptk/witnesses.hpp"

namespace exptk::cli {

enum ExitStatus : int { kSuccess = 0, kInternal = 1, kArguments = 2, kHypothesis = 3 };

inline constexpr const char* kThreadsEnv = "EXPONENT_TOOLKIT_THREADS";

inline unsigned thread_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv(kThreadsEnv)) {
        try {
            long v = std::stol(env);
            if (v >= 1)
                return static_cast<unsigned>(std::min<long>(v, hw));
        }
        catch (const std::exception&) {
        }
    }
    return hw;
}

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require_positive(int value, const char* flag)
{
    if (value < 1)
        throw UsageError(std::string(flag) + " must be positive");
}

inline void emit(const std::optional<std::string>& out_path, const std::string& content, std::ostream& out)
{
    if (out_path)
        write_file_atomic(*out_path, content);
    else
        out << content;
}

}  // namespace detail

inline int cmd_ext(int prime, const std::string& module, int max_s, int max_t, const std::optional<std::string>& out_path,
                   std::ostream& out)
{
    detail::require_positive(max_s, "--max-s");
    detail::require_positive(max_t, "--max-t");
    auto tag = parse_module(module);
    if (!tag)
        throw UsageError("unknown module '" + module + "' (expected sphere, hz or tau1)");
    Prime p(prime);
    auto chart = compute_chart(p, *tag, max_s, max_t, {thread_count(), std::nullopt});
    detail::emit(out_path, chart_to_string(chart), out);
    return kSuccess;
}

inline int cmd_verify_vanishing(int prime, int max_s, int max_t, std::ostream& out)
{
    detail::require_positive(max_s, "--max-s");
    detail::require_positive(max_t, "--max-t");
    Prime p(prime);
    auto chart = compute_chart(p, BuiltinModule::Sphere, max_s, max_t, {thread_count(), std::nullopt});
    auto violations = vanishing_region_violations(chart);
    out << "vanishing region: 0 < s < t < "
        << (p.is_two() ? std::string("3s - 3") : std::to_string(2 * prime - 1) + "s - 2") << "\n";
    out << "window: s <= " << max_s << ", t <= " << max_t << "\n";
    for (const auto& v : violations)
        out << "violation s=" << v.s << " t=" << v.t << " dim=" << v.dim << "\n";
    out << (violations.empty() ? "verified: region empty" : "FAILED") << "\n";
    return violations.empty() ? kSuccess : kInternal;
}

inline int cmd_verify_dimshift(int prime, int max_s, int max_t, const std::string& shift_name, std::ostream& out)
{
    detail::require_positive(max_s, "--max-s");
    detail::require_positive(max_t, "--max-t");
    DimensionShift shift;
    if (shift_name == "down")
        shift = DimensionShift::down();
    else if (shift_name == "up")
        shift = DimensionShift::up();
    else
        throw UsageError("--shift must be 'down' or 'up'");
    Prime p(prime);
    ResolutionOptions opts{thread_count(), std::nullopt};
    auto sphere = compute_chart(p, BuiltinModule::Sphere, max_s + 1, max_t + 1, opts);
    auto tau1 = compute_chart(p, BuiltinModule::Tau1, max_s, max_t, opts);
    auto found = verify_dimension_shift(sphere, tau1, shift);
    out << "checking tau1(s,t) = sphere(s" << (shift.ds < 0 ? "-" : "+") << "1,t" << (shift.dt < 0 ? "-" : "+")
        << "1) for s != t and tau1(s,s) = 0, s <= " << max_s << ", t <= " << max_t << "\n";
    for (const auto& d : found)
        out << "discrepancy s=" << d.s << " t=" << d.t << " expected=" << d.expected << " actual=" << d.actual << "\n";
    out << (found.empty() ? "verified: no discrepancies" : std::to_string(found.size()) + " discrepancies") << "\n";
    return found.empty() ? kSuccess : kInternal;
}

inline int cmd_bounds(int prime, int n, std::optional<int> table_max, std::ostream& out)
{
    detail::require_positive(n, "--n");
    Prime p(prime);
    int last = n;
    if (table_max) {
        detail::require_positive(*table_max, "--table");
        if (*table_max < n)
            throw UsageError("--table must be at least --n");
        last = *table_max;
    }
    const std::vector<std::pair<std::string, BoundKind>> columns{
        {"lower", BoundKind::MainLower},
        {"upper", BoundKind::MainUpper},
        {"hurewicz-kernel", BoundKind::HurewiczKernel},
        {"hurewicz-cokernel", BoundKind::HurewiczCokernel},
        {"k-invariant", BoundKind::KInvariant},
    };
    out << "# p-exponent bounds for tau[1,n]S^0 at p = " << prime << "\n";
    out << std::setw(6) << "n";
    for (const auto& [name, kind] : columns)
        out << " " << std::setw(static_cast<int>(std::max<std::size_t>(name.size(), 5))) << name;
    out << "\n";
    for (int k = n; k <= last; ++k) {
        out << std::setw(6) << k;
        for (const auto& [name, kind] : columns)
            out << " " << std::setw(static_cast<int>(std::max<std::size_t>(name.size(), 5)))
                << closed_form_bound(kind, p, k).value;
        out << "\n";
    }
    return kSuccess;
}

inline int cmd_hurewicz(int prime, int n, std::ostream& out)
{
    detail::require_positive(n, "--n");
    Prime p(prime);
    auto hb = hurewicz_bounds(p, n, default_certificate_source(p));
    out << "p = " << prime << ", n = " << n << "\n";
    out << "kernel:   p^" << hb.kernel.value << " kills " << hb.kernel.subject << "  (" << hb.kernel.provenance << ")\n";
    out << "cokernel: p^" << hb.cokernel.value << " times any class lies in the image  (" << hb.cokernel.provenance
        << ")\n";
    out << "closed forms: kernel " << closed_form_bound(BoundKind::HurewiczKernel, p, n).value << ", cokernel "
        << closed_form_bound(BoundKind::HurewiczCokernel, p, n).value << "\n";
    return kSuccess;
}

inline int cmd_equivariant(const std::string& group_file, int n, int prime, std::ostream& out)
{
    detail::require_positive(n, "--n");
    Prime p(prime);
    std::ifstream in(group_file);
    if (!in)
        throw UsageError("cannot read group file '" + group_file + "'");
    auto data = read_group_data(in);
    auto cert = equivariant_bound(data, n, p, default_certificate_source(p));
    out << "group " << data.group << ", n = " << n << ", p = " << prime << "\n";
    out << "p-exponent bound: " << cert.value << "  (" << cert.provenance << ")\n";
    out << "lcm-form bound (p-part): " << integer_form(cert) << "\n";
    return kSuccess;
}

inline int cmd_witnesses(int prime, int n_max, std::ostream& out)
{
    detail::require_positive(n_max, "--n");
    Prime p(prime);
    out << "# lower-bound witnesses at p = " << prime << " with n <= " << n_max << "\n";
    for (int param = 1;; ++param) {
        auto w = lower_bound_witness(p, param);
        if (w.degree > n_max)
            break;
        out << (p.is_two() ? "r=" : "k=") << param << " n=" << w.degree << " lower=" << w.lower.value
            << " upper=" << main_upper_value(p, w.degree) << " cells=[" << w.cell_bottom << "," << w.cell_top << "] "
            << w.k_theory.statement << "  [" << w.k_theory.source << "]\n";
    }
    auto violations = consistency_sweep(p, n_max);
    for (const auto& v : violations)
        out << "violation param=" << v.parameter << " n=" << v.degree << " " << v.what << "\n";
    out << (violations.empty() ? "consistent" : "INCONSISTENT") << "\n";
    return violations.empty() ? kSuccess : kInternal;
}

inline int cmd_render_svg(const std::string& chart_file, const std::optional<std::string>& out_path, std::ostream& out)
{
    std::ifstream in(chart_file);
    if (!in)
        throw UsageError("cannot read chart file '" + chart_file + "'");
    auto chart = read_chart(in);
    detail::emit(out_path, render_svg(chart), out);
    return kSuccess;
}

/// Parses argv and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Ext charts over the Steenrod algebra and torsion-exponent bounds", "exptk"};
    app.require_subcommand(1);

    int prime = 2, max_s = 0, max_t = 0, n = 0;
    std::string module = "sphere", shift = "down", group_file, chart_file;
    std::optional<std::string> out_path;
    std::optional<int> table;

    auto add_prime = [&](CLI::App* sub) { sub->add_option("--prime", prime, "prime p")->default_val(2); };
    auto add_window = [&](CLI::App* sub) {
        sub->add_option("--max-s", max_s, "largest homological degree s")->required();
        sub->add_option("--max-t", max_t, "largest internal degree t")->required();
    };

    auto* ext = app.add_subcommand("ext", "compute an Ext chart and write it as a chart file");
    add_prime(ext);
    ext->add_option("--module", module, "sphere, hz or tau1")->default_val("sphere");
    add_window(ext);
    ext->add_option("--out", out_path, "output chart file (default: stdout)");

    auto* vanish = app.add_subcommand("verify-vanishing", "check the sphere chart's vanishing region is empty");
    add_prime(vanish);
    add_window(vanish);

    auto* dimshift = app.add_subcommand("verify-dimshift", "compare the tau1 chart with the shifted sphere chart");
    add_prime(dimshift);
    add_window(dimshift);
    dimshift->add_option("--shift", shift, "down: sphere(s-1,t-1); up: sphere(s+1,t+1)")->default_val("down");

    auto* bounds = app.add_subcommand("bounds", "closed-form exponent bounds");
    add_prime(bounds);
    bounds->add_option("--n", n, "degree n")->required();
    bounds->add_option("--table", table, "print rows n..N");

    auto* hurewicz = app.add_subcommand("hurewicz", "Hurewicz kernel/cokernel exponent bounds");
    add_prime(hurewicz);
    hurewicz->add_option("--n", n, "degree n")->required();

    auto* equivariant = app.add_subcommand("equivariant", "exponent bound for equivariant stable stems");
    add_prime(equivariant);
    equivariant->add_option("--n", n, "degree n")->required();
    equivariant->add_option("--group-file", group_file, "subgroup data file")->required();

    auto* witnesses = app.add_subcommand("witnesses", "lower-bound witnesses and consistency sweep");
    add_prime(witnesses);
    witnesses->add_option("--n", n, "largest degree n")->default_val(20);

    auto* svg = app.add_subcommand("render-svg", "render a chart file as SVG");
    svg->add_option("chart", chart_file, "chart file")->required();
    svg->add_option("--out", out_path, "output SVG (default: stdout)");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    }
    catch (const CLI::ParseError& e) {
        err << "exptk: " << e.what() << "\n";
        return kArguments;
    }

    try {
        if (ext->parsed())
            return cmd_ext(prime, module, max_s, max_t, out_path, out);
        if (vanish->parsed())
            return cmd_verify_vanishing(prime, max_s, max_t, out);
        if (dimshift->parsed())
            return cmd_verify_dimshift(prime, max_s, max_t, shift, out);
        if (bounds->parsed())
            return cmd_bounds(prime, n, table, out);
        if (hurewicz->parsed())
            return cmd_hurewicz(prime, n, out);
        if (equivariant->parsed())
            return cmd_equivariant(group_file, n, prime, out);
        if (witnesses->parsed())
            return cmd_witnesses(prime, n, out);
        if (svg->parsed())
            return cmd_render_svg(chart_file, out_path, out);
    }
    catch (const HypothesisViolation& e) {
        err << "exptk: hypothesis violated: " << e.what() << "\n";
        return kHypothesis;
    }
    catch (const FormatError& e) {
        err << "exptk: malformed input: " << e.what() << "\n";
        return kArguments;
    }
    catch (const std::invalid_argument& e) {
        err << "exptk: " << e.what() << "\n";
        return kArguments;
    }
    catch (const std::exception& e) {
        err << "exptk: internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kArguments;
}

}  // namespace exptk::cli
