// flatrank: command-line front end for the restricted Koszul flattening toolkit.

#include <flatrank/flatrank.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace {

using namespace flatrank;

struct QRange {
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
};

QRange parse_range(const std::string& s) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const auto v = static_cast<std::uint32_t>(std::stoul(s));
            return {v, v};
        }
        QRange r{static_cast<std::uint32_t>(std::stoul(s.substr(0, dots))),
                 static_cast<std::uint32_t>(std::stoul(s.substr(dots + 2)))};
        if (r.lo > r.hi) throw ArgumentError("empty range '" + s + "'");
        return r;
    } catch (const std::logic_error&) {
        throw ArgumentError("expected a range A..B or a single value, got '" + s + "'");
    }
}

// Reads from `path`, or stdin when empty or "-".
class Input {
public:
    explicit Input(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ifstream>(path);
            if (!*file_) throw std::runtime_error("cannot open " + path);
        }
    }
    std::istream& get() { return file_ ? *file_ : std::cin; }

private:
    std::unique_ptr<std::ifstream> file_;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot write " + path);
        }
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void print_summary(const std::vector<FlatteningReport>& reports) {
    for (const auto& r : reports) {
        std::cout << r.subject << " q=" << r.q << " dims=" << r.rows << "x" << r.cols << " rank=" << r.rank.rank;
        if (r.expected) std::cout << " expected=" << *r.expected;
        if (r.rank_diff) std::cout << " rank(Sq)=" << r.rank_diff->rank;
        std::cout << " lo_bound=" << r.lo_bound << " [" << r.rank.justification << "]";
        for (const auto& c : r.checks) {
            std::cout << ' ' << c.name << '=' << (c.passed ? "ok" : "FAIL") << (c.asserted ? "" : "(unasserted)");
        }
        for (const auto& n : r.notes) std::cout << " ; " << n;
        std::cout << '\n';
    }
}

void write_outputs(const std::string& command, const nlohmann::json& params, const std::vector<FlatteningReport>& reports,
                   const VerifyOptions& opts, const std::string& out_path, const std::string& csv_path) {
    if (!out_path.empty()) {
        Output out(out_path);
        out.get() << report_document(command, params, reports, {opts.prime, opts.fallback_prime}, opts.seed).dump(2)
                  << '\n';
    }
    if (!csv_path.empty()) {
        Output out(csv_path);
        write_csv(out.get(), reports);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Koszul flattening ranks for Kronecker powers of the Coppersmith-Winograd tensor"};
    app.require_subcommand(1);

    VerifyOptions opts;
    std::string q_range = "3..12";
    std::uint32_t m = 2;
    std::string out_path;
    std::string csv_path;

    auto* verify = app.add_subcommand("verify", "check the rank claims for m = 2 or 3");
    verify->add_option("--m", m, "Kronecker power")->check(CLI::IsMember({2U, 3U}));
    verify->add_option("--q", q_range, "q range A..B");
    verify->add_flag("--exact", opts.exact, "use fraction-free elimination for uncertified ranks");
    verify->add_option("--prime", opts.prime, "elimination prime");
    verify->add_option("--out", out_path, "JSON report path");
    verify->add_option("--csv", csv_path, "CSV report path");
    verify->add_option("--parallel", opts.parallel, "run up to N instances concurrently");

    auto* explore = app.add_subcommand("explore", "report restricted flattening ranks for any m >= 2");
    explore->add_option("--m", m, "Kronecker power")->required();
    explore->add_option("--q", q_range, "q range A..B")->required();
    explore->add_option("--prime", opts.prime, "elimination prime");
    explore->add_flag("--exact", opts.exact, "fraction-free elimination");
    explore->add_option("--out", out_path, "JSON report path");
    explore->add_option("--csv", csv_path, "CSV report path");
    explore->add_option("--parallel", opts.parallel, "run up to N instances concurrently");

    auto* bound = app.add_subcommand("bound", "border-rank lower bounds from random restrictions");
    bound->require_subcommand(1);
    auto* bound_mm = bound->add_subcommand("matmul", "matrix multiplication tensor M_<n>");
    std::uint32_t n = 2;
    std::size_t p = 1;
    std::size_t trials = 20;
    std::uint64_t seed = 0;
    bound_mm->add_option("--n", n)->required();
    bound_mm->add_option("--p", p)->required();
    bound_mm->add_option("--trials", trials);
    bound_mm->add_option("--seed", seed);
    bound_mm->add_option("--out", out_path, "JSON report path");

    auto* gen = app.add_subcommand("gen", "write a tensor in the interchange format");
    std::string kind;
    std::uint32_t q = 3;
    std::uint32_t j = 1;
    std::uint32_t power = 1;
    std::string gen_out;
    gen->add_option("kind", kind, "cw | w | s | matmul")->required()->check(CLI::IsMember({"cw", "w", "s", "matmul"}));
    gen->add_option("--q", q);
    gen->add_option("--j", j);
    gen->add_option("--power", power);
    gen->add_option("--n", n);
    gen->add_option("-o,--output", gen_out);

    auto* flatten = app.add_subcommand("flatten", "read a tensor, write its Koszul flattening matrix");
    std::size_t flat_p = 1;
    bool restrict_a = false;
    std::string in_path;
    std::string flat_out;
    flatten->add_option("--p", flat_p);
    flatten->add_flag("--restrict", restrict_a, "compress A to <e0,e1,e2> first (uses the file's subdim and power)");
    flatten->add_option("-i,--input", in_path);
    flatten->add_option("-o,--output", flat_out);

    auto* rank = app.add_subcommand("rank", "read a matrix, print its rank");
    bool rank_exact_flag = false;
    std::uint64_t rank_prime = kDefaultPrime;
    rank->add_flag("--exact", rank_exact_flag, "rank over Q by fraction-free elimination");
    rank->add_option("--prime", rank_prime);
    rank->add_option("-i,--input", in_path);

    CLI11_PARSE(app, argc, argv);

    try {
        opts.max_dim = default_max_dim();
        if (verify->parsed() || explore->parsed()) {
            FieldSpec::prime_field(opts.prime);
            const auto range = parse_range(q_range);
            std::vector<FlatteningReport> reports;
            if (verify->parsed()) {
                for (std::uint32_t qq = range.lo; qq <= range.hi; ++qq) {
                    if (qq < theorem_min_q(m)) {
                        std::cerr << "warning: q=" << qq << " is outside the theorem range; computed, not asserted\n";
                    }
                }
                reports = m == 2 ? verify_square(range.lo, range.hi, opts) : verify_cube(range.lo, range.hi, opts);
            } else {
                reports = explore_power(range.lo, range.hi, m, opts);
            }
            print_summary(reports);
            const nlohmann::json params = {{"m", m}, {"q", q_range}, {"exact", opts.exact}, {"prime", opts.prime}};
            write_outputs(verify->parsed() ? "verify" : "explore", params, reports, opts, out_path, csv_path);
            if (verify->parsed()) {
                for (const auto& r : reports) {
                    if (!r.passed()) return 1;
                }
            }
            return 0;
        }
        if (bound_mm->parsed()) {
            const auto rep = bound_matmul(n, p, trials, seed, opts.prime);
            std::cout << rep.subject << " p=" << p << " trials=" << trials << " seed=" << seed
                      << " lower_bound=" << rep.lo_bound << '\n';
            const nlohmann::json params = {{"n", n}, {"p", p}, {"trials", trials}, {"seed", seed}};
            opts.seed = seed;
            write_outputs("bound matmul", params, {rep}, opts, out_path, "");
            return rep.passed() ? 0 : 1;
        }
        if (gen->parsed()) {
            SparseTensor t;
            if (kind == "cw") {
                t = cw_power(q, power);
            } else if (kind == "w") {
                t = kronecker_power(w_tensor(q, j), power);
            } else if (kind == "s") {
                t = difference_tensor(q, power);
            } else {
                t = matmul_tensor(n);
            }
            Output out(gen_out);
            write_tensor(out.get(), t);
            return 0;
        }
        if (flatten->parsed()) {
            Input in(in_path);
            SparseTensor t = read_tensor(in.get());
            Output out(flat_out);
            if (restrict_a) {
                if (flat_p != 1) throw ArgumentError("--restrict implies p = 1");
                write_matrix(out.get(), restricted_flattening(t).matrix());
            } else {
                write_matrix(out.get(), koszul_flattening(t, flat_p).matrix());
            }
            return 0;
        }
        if (rank->parsed()) {
            Input in(in_path);
            const auto mat = read_matrix(in.get());
            const auto r = rank_exact_flag ? rank_exact(mat) : rank_mod_p(mat, rank_prime);
            std::cout << to_json(r).dump() << '\n';
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
