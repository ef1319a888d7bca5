// wzz: zigzag barcodes with representatives.
//
// exit codes: 0 ok, 1 bad input, 2 internal invariant broken, 3 verify failed

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wzz/bench.hpp"
#include "wzz/engine.hpp"
#include "wzz/filtration.hpp"
#include "wzz/rips.hpp"
#include "wzz/validator.hpp"

namespace {

using namespace wzz;

constexpr int kOk = 0, kBadInput = 1, kInternal = 2, kVerifyFail = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    return out;
}

ZigzagFiltration load_filtration(const std::string& path)
{
    auto in = open_in(path);
    ZigzagFiltration f = parse_filtration(in);
    require_valid(f);
    return f;
}

// Filtration files start with 'i' or 'd'; points files with a number.
bool looks_like_filtration(const std::string& path)
{
    auto in = open_in(path);
    std::string line;
    while (std::getline(in, line)) {
        auto k = line.find_first_not_of(" \t\r");
        if (k == std::string::npos || line[k] == '#') continue;
        return line[k] == 'i' || line[k] == 'd';
    }
    return true;
}

struct ComputeOpts {
    std::string input, output, reps;
    bool boundary = false;
};

int cmd_compute(const ComputeOpts& o)
{
    ZigzagFiltration f = load_filtration(o.input);
    auto start = std::chrono::steady_clock::now();
    PersistenceResult res = run(f);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    auto out = open_out(o.output);
    write_barcode(out, bars(res.intervals, o.boundary));
    if (!o.reps.empty()) {
        std::vector<Representative> reps;
        for (const auto& iv : res.intervals)
            if (o.boundary || iv.module == Module::H) reps.push_back(res.representative(iv));
        auto rout = open_out(o.reps);
        write_representatives(rout, reps);
    }
    std::cout << "m " << res.stats.m << "\nn " << res.stats.n << "\nH intervals " << res.stats.h_intervals
              << "\nB intervals " << res.stats.b_intervals << "\nwires " << res.stats.wires << "\nseconds "
              << std::fixed << std::setprecision(3) << secs << '\n';
    return kOk;
}

struct VerifyOpts {
    std::string filtration, barcode, reps;
};

int cmd_verify(const VerifyOpts& o)
{
    ZigzagFiltration f = load_filtration(o.filtration);
    std::vector<BarEntry> bar_list;
    {
        auto in = open_in(o.barcode);
        bar_list = read_barcode(in);
    }
    std::optional<std::vector<Representative>> reps;
    if (!o.reps.empty()) {
        auto in = open_in(o.reps);
        reps = read_representatives(in);
    }

    Oracle oracle(f);
    bool has_boundary = std::any_of(bar_list.begin(), bar_list.end(), [](const BarEntry& b) { return b.module == Module::B; });
    Certificate cert = check_pairing(oracle, bar_list, has_boundary);

    if (reps) {
        std::map<BarEntry, int> want;
        for (const auto& b : bar_list) ++want[b];
        for (const auto& rep : *reps) {
            BarEntry key{rep.module, rep.degree, rep.birth, rep.death};
            auto it = want.find(key);
            if (it == want.end() || it->second == 0) {
                cert.fail("representative list", "no barcode line for " + std::string(1, static_cast<char>(rep.module)) +
                                                      std::to_string(rep.degree) + " [" + std::to_string(rep.birth) +
                                                      "," + std::to_string(rep.death) + "]");
                continue;
            }
            --it->second;
            cert.merge(check_representative(oracle, rep));
        }
        std::size_t missing = 0;
        for (const auto& [k, c] : want) missing += static_cast<std::size_t>(c);
        if (missing) cert.fail("representative list", std::to_string(missing) + " intervals lack a representative");
        else cert.pass("representative list");
    } else {
        std::cout << "# no representatives given; pairing counts alone do not certify the barcode\n";
    }
    cert.write(std::cout);
    std::cout << (cert.ok() ? "PASS" : "FAIL") << '\n';
    return cert.ok() ? kOk : kVerifyFail;
}

struct RipsOpts {
    std::string points, output;
    double mu = 2.0, nu = 2.2;
    int max_dim = 2;
};

int cmd_rips(const RipsOpts& o)
{
    if (!(o.mu > 0) || o.mu > o.nu) throw InputError("need 0 < mu <= nu");
    if (o.max_dim < 1) throw InputError("max-dim must be at least 1");
    PointCloud cloud;
    {
        auto in = open_in(o.points);
        cloud = load_points(in);
    }
    if (cloud.size() == 0) throw InputError("no points in " + o.points);
    auto g = greedy_permutation(cloud);
    if (g.dropped) std::cerr << "warning: " << g.dropped << " duplicate points ignored\n";
    ZigzagFiltration f = oscillating_rips(cloud, o.mu, o.nu, o.max_dim);
    auto out = open_out(o.output);
    out << serialize(f);
    auto report = validate(f);
    std::cout << "points " << cloud.size() - g.dropped << "\nm " << report.m << "\nn " << report.n << '\n';
    return kOk;
}

struct BenchOpts {
    std::string input;
    int trials = 3, rungs = 4, max_dim = 2;
    std::uint64_t seed = 1;
    std::size_t random_points = 0;
    double mu = 2.0, nu = 2.2;
};

int cmd_bench(const BenchOpts& o)
{
    if (o.trials < 1 || o.rungs < 1) throw InputError("trials and rungs must be positive");
    ZigzagFiltration block;
    if (o.random_points > 0) {
        block = oscillating_rips(random_cloud(o.random_points, 2, o.seed), o.mu, o.nu, o.max_dim);
    } else if (o.input.empty()) {
        throw InputError("bench needs an input file or --random");
    } else if (looks_like_filtration(o.input)) {
        block = load_filtration(o.input);
    } else {
        auto in = open_in(o.input);
        PointCloud cloud = load_points(in);
        if (cloud.size() == 0) throw InputError("no points in " + o.input);
        block = oscillating_rips(cloud, o.mu, o.nu, o.max_dim);
    }
    block = with_teardown(block);

    auto rows = run_ladder(block, o.rungs, o.trials);
    std::cout << std::setw(8) << "blocks" << std::setw(12) << "m" << std::setw(8) << "n" << std::setw(12) << "seconds"
              << std::setw(14) << "peak_bytes" << '\n';
    for (const auto& r : rows)
        std::cout << std::setw(8) << r.blocks << std::setw(12) << r.m << std::setw(8) << r.n << std::setw(12)
                  << std::fixed << std::setprecision(4) << r.seconds << std::setw(14) << r.peak_footprint_bytes
                  << '\n';
    if (rows.size() > 1)
        std::cout << "exponent " << std::setprecision(3) << fitted_exponent(rows) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"zigzag barcodes with representatives"};
    app.require_subcommand(1);

    ComputeOpts co;
    auto* compute = app.add_subcommand("compute", "barcode (and representatives) of a filtration");
    compute->add_option("--reps", co.reps, "write representatives here");
    compute->add_flag("--boundary-module", co.boundary, "also output boundary-module intervals");
    compute->add_option("input", co.input)->required();
    compute->add_option("output", co.output)->required();

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "check a barcode and representatives against a filtration");
    verify->add_option("filtration", vo.filtration)->required();
    verify->add_option("barcode", vo.barcode)->required();
    verify->add_option("reps", vo.reps);

    RipsOpts ro;
    auto* rips = app.add_subcommand("rips", "oscillating Rips filtration of a point cloud");
    rips->add_option("--mu", ro.mu, "lower multiplier")->capture_default_str();
    rips->add_option("--nu", ro.nu, "upper multiplier")->capture_default_str();
    rips->add_option("--max-dim", ro.max_dim, "largest simplex dimension")->capture_default_str();
    rips->add_option("points", ro.points)->required();
    rips->add_option("output", ro.output)->required();

    BenchOpts bo;
    auto* bench = app.add_subcommand("bench", "runtime on a doubling ladder at a fixed complex-size cap");
    bench->add_option("--trials", bo.trials, "runs per rung, fastest kept")->capture_default_str();
    bench->add_option("--seed", bo.seed, "seed for --random")->capture_default_str();
    bench->add_option("--rungs", bo.rungs, "ladder rungs")->capture_default_str();
    bench->add_option("--random", bo.random_points, "use this many seeded random planar points");
    bench->add_option("--mu", bo.mu)->capture_default_str();
    bench->add_option("--nu", bo.nu)->capture_default_str();
    bench->add_option("--max-dim", bo.max_dim)->capture_default_str();
    bench->add_option("input", bo.input);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kBadInput;
    }

    try {
        if (*compute) return cmd_compute(co);
        if (*verify) return cmd_verify(vo);
        if (*rips) return cmd_rips(ro);
        if (*bench) return cmd_bench(bo);
    } catch (const InvariantError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const WireError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const FiltrationError& e) {
        std::cerr << "invalid filtration: " << e.what() << '\n';
        return kBadInput;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kBadInput;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return kBadInput;
}
