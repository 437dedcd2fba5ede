#ifndef BFOCK_CLI_APP_HPP
#define BFOCK_CLI_APP_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <bfock/bfock.hpp>

namespace bfock::cli
{

enum ExitCode { exit_pass = 0, exit_violation = 1, exit_usage = 2, exit_resource = 3 };

inline std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') {
            q += '"';
        }
        q += c;
    }
    return q + '"';
}

template <typename... T>
std::string csv_row(const T &...cells)
{
    std::ostringstream os;
    bool first = true;
    auto put = [&](const auto &c) {
        if (!first) {
            os << ',';
        }
        first = false;
        std::ostringstream cell;
        cell << std::setprecision(12) << c;
        os << csv_field(cell.str());
    };
    (put(cells), ...);
    return os.str();
}

// Writes to --out when given, otherwise to the stream.
class Sink
{
public:
    Sink(const std::string &path, std::ostream &fallback) : m_fallback(fallback)
    {
        if (!path.empty()) {
            m_file.open(path);
            require_domain(m_file.good(), "cannot open output file '" + path + "'");
        }
    }
    std::ostream &stream()
    {
        return m_file.is_open() ? m_file : m_fallback;
    }

private:
    std::ofstream m_file;
    std::ostream &m_fallback;
};

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    require_domain(in.good(), "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Exact "p/q" or decimal; used where numeric input is allowed.
inline double parse_number(const std::string &s)
{
    if (s.find('/') != std::string::npos) {
        return to_double(parse_rational(s));
    }
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw DomainError("not a number: '" + s + "'");
    }
    require_domain(used == s.size() && std::isfinite(v), "not a number: '" + s + "'");
    return v;
}

inline std::vector<int> parse_int_list(const std::string &s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        require_domain(detail::is_integer_literal(item), "not an integer list: '" + s + "'");
        out.push_back(std::stoi(item));
    }
    return out;
}

// enumerate

inline int cmd_enumerate(const std::string &kind, int n, const std::string &format, Sink &sink)
{
    auto &os = sink.stream();
    const bool json = format == "json";
    io::Json rows = io::Json::array();
    if (kind == "group") {
        if (!json) {
            os << csv_row("n", "permutation", "ninv", "pinv") << '\n';
        }
        for (const auto &s : enumerate_group(n)) {
            if (json) {
                rows.push_back({{"permutation", io::to_json(s)}, {"ninv", ninv(s)}, {"pinv", pinv(s)}});
            } else {
                os << csv_row(n, io::to_json(s).dump(), ninv(s), pinv(s)) << '\n';
            }
        }
    } else {
        std::vector<PartitionB> parts;
        if (kind == "p12b") {
            parts = enumerate_p12b(n);
        } else if (kind == "p2b") {
            parts = enumerate_p2b(n);
        } else if (kind == "ncb") {
            parts = enumerate_ncb(n);
        } else {
            parts = enumerate_nca(n);
        }
        if (!json) {
            os << csv_row("n", "partition", "cr", "nb", "cs") << '\n';
        }
        for (const auto &p : parts) {
            const auto st = statistics(p);
            if (json) {
                rows.push_back({{"partition", io::to_json(p)}, {"cr", st.cr}, {"nb", st.nb}, {"cs", st.cs}});
            } else {
                os << csv_row(n, p.str(), st.cr, st.nb, st.cs) << '\n';
            }
        }
    }
    if (json) {
        os << rows.dump(2) << '\n';
    }
    return exit_pass;
}

// moment

struct MomentOptions {
    int n = 0;
    std::string assignment;
    std::string route = "both";
    std::string alpha;
    std::string q;
    std::string mode = "symbolic";
    std::string order;
    std::string format = "json";
};

inline int cmd_moment(const MomentOptions &o, Sink &sink, std::ostream &err)
{
    VectorAssignment a;
    if (!o.assignment.empty()) {
        a = io::assignment_from_json(io::parse(read_file(o.assignment)));
        require_domain(o.n == 0 || o.n == a.size(), "--n does not match the assignment size");
    } else {
        require_domain(o.n >= 1, "moment needs --n or --assignment");
        a = unit_assignment(o.n, 1);
    }
    std::vector<int> order;
    if (!o.order.empty()) {
        order = parse_int_list(o.order);
        require_domain(o.route == "operator", "--order is only available with --route operator");
    } else {
        for (int i = a.size(); i >= 1; --i) {
            order.push_back(i);
        }
    }
    const bool want_op = o.route != "partitions";
    const bool want_part = o.route != "operator";

    io::Json out{{"word", order}, {"assignment", io::to_json(a)}, {"route", o.route}};
    bool equal = true;
    if (o.mode == "numeric") {
        require_domain(!o.alpha.empty() && !o.q.empty(), "numeric mode needs --alpha and --q");
        const auto def = numeric(parse_number(o.alpha), parse_number(o.q));
        double vo = 0, vp = 0;
        if (want_op) {
            vo = moment_operator_ordered(a, order, def);
            out["operator"] = vo;
        }
        if (want_part) {
            vp = moment_partitions(a, def);
            out["partitions"] = vp;
        }
        if (want_op && want_part) {
            equal = std::abs(vo - vp) <= 1e-9 * std::max(1.0, std::abs(vo));
            out["equal"] = equal;
        }
        out["value"] = want_op ? vo : vp;
    } else {
        require_domain(o.mode == "symbolic", "--mode must be symbolic or numeric");
        BiPoly po, pp;
        if (want_op) {
            po = moment_operator_ordered(a, order, symbolic());
            out["operator"] = io::to_json(po);
        }
        if (want_part) {
            pp = moment_partitions(a);
            out["partitions"] = io::to_json(pp);
        }
        if (want_op && want_part) {
            equal = po == pp;
            out["equal"] = equal;
        }
        const BiPoly &p = want_op ? po : pp;
        out["polynomial"] = io::to_json(p);
        out["text"] = p.str();
        if (!o.alpha.empty() || !o.q.empty()) {
            require_domain(!o.alpha.empty() && !o.q.empty(), "evaluation needs both --alpha and --q");
            out["value"] = io::rational_to_json(p.eval(parse_rational(o.alpha), parse_rational(o.q)));
        }
    }
    auto &os = sink.stream();
    if (o.format == "csv") {
        require_domain(o.mode == "symbolic", "csv output lists polynomial terms; use json in numeric mode");
        os << csv_row("deg_alpha", "deg_q", "numerator", "denominator") << '\n';
        for (const auto &t : out["polynomial"]) {
            os << csv_row(t[0].dump(), t[1].dump(), t[2].is_string() ? t[2].get<std::string>() : t[2].dump(),
                          t[3].is_string() ? t[3].get<std::string>() : t[3].dump())
               << '\n';
        }
    } else {
        os << out.dump(2) << '\n';
    }
    if (!equal) {
        err << "routes disagree: operator and partition moments differ\n";
        return exit_violation;
    }
    return exit_pass;
}

// verify

struct CheckLine {
    std::string identity;
    bool pass = false;
    std::string detail;
};

inline std::vector<CheckLine> verify_factorization()
{
    std::vector<CheckLine> r;
    const auto def = symbolic();
    for (int n = 1; n <= 4; ++n) {
        const bool ok = symmetrization_element(n, def) == symmetrization_element(n - 1, def).extended(n) * r_element(n, def);
        r.push_back({"P(n) = ext(P(n-1)) R(n) in the group algebra", ok, "n=" + std::to_string(n)});
    }
    for (int n = 1; n <= 3; ++n) {
        for (int d = 1; d <= 2; ++d) {
            const auto inner = representation_matrix(symmetrization_element(n - 1, def).extended(n), d);
            const bool ok = symmetrization(n, d) == inner * r_operator(n, d);
            r.push_back({"P(n) = (I x P(n-1) x I) R(n) as matrices", ok,
                         "n=" + std::to_string(n) + " d=" + std::to_string(d)});
        }
    }
    return r;
}

inline std::vector<Coords> sample_coords()
{
    return {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}, {Rational(1), Rational(-1, 2)},
            {Rational(1, 3), Rational(2)}};
}

inline std::vector<CheckLine> verify_commutation()
{
    std::vector<CheckLine> r;
    const DoubleFock<BiPoly> F(2, symbolic());
    const auto vs = sample_coords();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto res = F.commutator_check(vs[i], vs[(i + 1) % vs.size()], vs[(i + 2) % vs.size()], vs[(i + 3) % vs.size()], 3);
        r.push_back({"b b*(xi,eta) - q b*(xi,eta) b = <x,xi><y,eta> I + alpha <x,eta><y,xi> (q^2)^N", res.holds,
                     std::string("residual ") + (res.holds ? "0" : "nonzero") + " at N_max=3, sample " + std::to_string(i)});
    }
    return r;
}

inline std::vector<CheckLine> verify_adjoint()
{
    std::vector<CheckLine> r;
    const DoubleFock<BiPoly> F(2, symbolic());
    const auto vs = sample_coords();
    const auto &x = vs[2];
    const auto &y = vs[3];
    for (int n = 0; n <= 2; ++n) {
        bool ok = true;
        for (std::size_t i = 0; i < level_dimension(n, 2) && ok; ++i) {
            const auto u = FockVector<BiPoly>::basis(2, index_word(i, n, 2));
            const auto bu = F.creation(x, y, u);
            for (std::size_t j = 0; j < level_dimension(n + 1, 2) && ok; ++j) {
                const auto w = FockVector<BiPoly>::basis(2, index_word(j, n + 1, 2));
                ok = F.inner(bu, w) == F.inner(u, F.annihilation(x, y, w));
            }
        }
        r.push_back({"<b* u, w> = <u, b w> in the deformed inner product", ok, "level " + std::to_string(n)});
    }
    for (int n = 0; n <= 3; ++n) {
        bool ok = true;
        for (std::size_t i = 0; i < level_dimension(n, 2) && ok; ++i) {
            const auto w = FockVector<BiPoly>::basis(2, index_word(i, n, 2));
            ok = F.annihilation(x, y, w, AnnihilationRoute::via_r) == F.annihilation(x, y, w, AnnihilationRoute::via_sums);
        }
        r.push_back({"b R(n) = p_q + alpha n_q", ok, "level " + std::to_string(n)});
    }
    return r;
}

inline std::vector<CheckLine> verify_kernel()
{
    std::vector<CheckLine> r;
    for (const auto &p : boundary_points()) {
        const std::string at = "(" + to_string(p.alpha) + "," + to_string(p.q) + ")";
        const auto cp = character_projection(2, 2, p);
        r.push_back({"character projection is idempotent", cp.matrix * cp.matrix == cp.matrix, at + " n=2 d=2"});
        const auto k = kernel_basis(2, 2, p);
        r.push_back({"P(n) has a nontrivial kernel at the boundary", k.dimension() > 0,
                     at + " n=2 d=2 kernel dimension " + std::to_string(k.dimension())});
    }
    const std::vector<ParameterPoint> interior{{Rational(1, 2), Rational(1, 3)},
                                               {Rational(-1, 2), Rational(1, 2)},
                                               {Rational(0), Rational(0)},
                                               {Rational(3, 4), Rational(-2, 3)},
                                               {Rational(-9, 10), Rational(-1, 5)}};
    for (const auto &p : interior) {
        const auto m = symmetrization<Rational>(2, 2, at_point(p.alpha, p.q));
        const std::size_t nul = m.rows() - rank(m);
        r.push_back({"P(n) is invertible inside the square", nul == 0,
                     "(" + to_string(p.alpha) + "," + to_string(p.q) + ") n=2 d=2 kernel dimension " + std::to_string(nul)});
    }
    return r;
}

inline std::vector<CheckLine> verify_trace()
{
    const BiPoly A = BiPoly::alpha(), Q = BiPoly::q();
    const auto defect = trace_defect(2);
    return {{"phi(G1 G2 G3 G4) - phi(G4 G1 G2 G3) = alpha^2 q^2 - alpha^2", defect == A * A * Q * Q - A * A,
             "defect " + defect.str()},
            {"trace defect vanishes at alpha = 0", defect.substitute_alpha(0).is_zero(), "alpha=0"}};
}

inline std::vector<CheckLine> verify_catalan()
{
    std::vector<CheckLine> r;
    Integer binom = 1;
    for (int n = 1; n <= 6; ++n) {
        binom = binom * (2 * n) * (2 * n - 1) / (n * n);
        const auto count = enumerate_ncb(2 * n).size();
        r.push_back({"#NC^B_2(2n) = C(2n,n)", Integer(count) == binom,
                     "n=" + std::to_string(n) + " count " + std::to_string(count) + " expected " + binom.str()});
    }
    return r;
}

inline int cmd_verify(const std::string &suite, const std::string &format, Sink &sink)
{
    std::vector<CheckLine> lines;
    if (suite == "factorization") {
        lines = verify_factorization();
    } else if (suite == "commutation") {
        lines = verify_commutation();
    } else if (suite == "adjoint") {
        lines = verify_adjoint();
    } else if (suite == "kernel") {
        lines = verify_kernel();
    } else if (suite == "trace") {
        lines = verify_trace();
    } else {
        lines = verify_catalan();
    }
    const bool all = std::all_of(lines.begin(), lines.end(), [](const CheckLine &c) { return c.pass; });
    auto &os = sink.stream();
    if (format == "json") {
        io::Json j = io::Json::array();
        for (const auto &c : lines) {
            j.push_back({{"identity", c.identity}, {"pass", c.pass}, {"detail", c.detail}});
        }
        os << io::Json{{"suite", suite}, {"pass", all}, {"checks", j}}.dump(2) << '\n';
    } else {
        for (const auto &c : lines) {
            os << (c.pass ? "PASS " : "FAIL ") << c.identity << " [" << c.detail << "]\n";
        }
        os << suite << ": " << (all ? "pass" : "FAIL") << '\n';
    }
    return all ? exit_pass : exit_violation;
}

// density

inline int cmd_density(const std::string &alpha, const std::string &q, int grid, Sink &sink)
{
    require_domain(grid >= 1 && grid <= 1000000, "--grid must be in 1..1000000");
    DensityParams p{parse_number(alpha), parse_number(q)};
    check_density_params(p);
    const double r = support_radius(p.q);
    auto &os = sink.stream();
    os << csv_row("t", "density") << '\n';
    for (int i = 0; i < grid; ++i) {
        const double t = -r + 2.0 * r * (i + 1) / (grid + 1);
        os << csv_row(t, mp_density(t, p)) << '\n';
    }
    os << "# mass=" << std::setprecision(15) << density_mass(p) << '\n';
    return exit_pass;
}

inline int run(std::vector<std::string> args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Type-B double Fock space: enumeration, moments, identities and densities"};
    app.require_subcommand(1);
    std::string out_path;
    std::string format;

    auto *en = app.add_subcommand("enumerate", "List group elements or type-B partitions with statistics");
    std::string kind;
    int n = 0;
    en->add_option("kind", kind, "group | p12b | p2b | ncb | nca")->required()->check(CLI::IsMember({"group", "p12b", "p2b", "ncb", "nca"}));
    en->add_option("n", n, "degree (group) or number of points")->required();
    en->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->default_val("csv");
    en->add_option("--out", out_path, "output file");

    auto *mo = app.add_subcommand("moment", "Vacuum moment by operator action and by the partition formula");
    MomentOptions mopt;
    mo->add_option("--n", mopt.n, "number of Gaussians");
    mo->add_option("--assignment", mopt.assignment, "assignment JSON file");
    mo->add_option("--route", mopt.route, "operator | partitions | both")
        ->check(CLI::IsMember({"operator", "partitions", "both"}))
        ->default_val("both");
    mo->add_option("--alpha", mopt.alpha, "alpha (p/q in symbolic mode)");
    mo->add_option("--q", mopt.q, "q (p/q in symbolic mode)");
    mo->add_option("--mode", mopt.mode, "symbolic | numeric")->check(CLI::IsMember({"symbolic", "numeric"}))->default_val("symbolic");
    mo->add_option("--order", mopt.order, "Gaussian order, comma separated, leftmost applied last");
    mo->add_option("--format", mopt.format, "json | csv")->check(CLI::IsMember({"csv", "json"}))->default_val("json");
    mo->add_option("--out", out_path, "output file");

    auto *ve = app.add_subcommand("verify", "Run an identity suite");
    std::string suite;
    ve->add_option("suite", suite, "factorization | commutation | adjoint | kernel | trace | catalan")
        ->required()
        ->check(CLI::IsMember({"factorization", "commutation", "adjoint", "kernel", "trace", "catalan"}));
    ve->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}))->default_val("text");
    ve->add_option("--out", out_path, "output file");

    auto *de = app.add_subcommand("density", "Sample the density on a uniform grid over the support");
    std::string dalpha = "0", dq = "0";
    int grid = 101;
    de->add_option("--alpha", dalpha, "alpha")->required();
    de->add_option("--q", dq, "q")->required();
    de->add_option("--grid", grid, "number of sample points")->default_val(101);
    de->add_option("--out", out_path, "output file");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        Sink sink(out_path, out);
        if (*en) {
            return cmd_enumerate(kind, n, format, sink);
        }
        if (*mo) {
            return cmd_moment(mopt, sink, err);
        }
        if (*ve) {
            return cmd_verify(suite, format, sink);
        }
        return cmd_density(dalpha, dq, grid, sink);
    } catch (const ResourceError &e) {
        err << "resource bound: " << e.what() << '\n';
        return exit_resource;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const NumericError &e) {
        err << "numeric error: " << e.what() << '\n';
        return exit_usage;
    } catch (const nlohmann::json::exception &e) {
        err << "error: malformed input: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace bfock::cli

#endif
