#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperindex/errors.hpp"
#include "hyperindex/hypergraph.hpp"
#include "hyperindex/indices.hpp"
#include "hyperindex/io.hpp"
#include "hyperindex/modring.hpp"
#include "hyperindex/oracle.hpp"

namespace {

using namespace hyperindex;

// Exit codes: 0 success / all checks pass, 1 I/O or parse problem (including
// command-line misuse), 2 violated domain precondition, 3 verification failure.
constexpr int kExitIo = 1;
constexpr int kExitDomain = 2;
constexpr int kExitVerify = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("cannot read " + path);
    return buf.str();
}

UniformHypergraph load(const std::string& path) {
    try {
        return parse_uhg(read_file(path)).hypergraph;
    } catch (const hyperindex::ParseError& e) {
        throw IoError(path + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    if (!out)
        throw IoError("cannot write " + out_path);
}

std::string format_decomposition(const ModuleDecomposition& d, int m) {
    std::ostringstream out;
    bool first = true;
    for (std::int64_t order : d.cyclic_orders) {
        out << (first ? "" : " (+) ") << "Z_" << order;
        first = false;
    }
    if (d.free_rank > 0) {
        out << (first ? "" : " (+) ");
        if (d.free_rank > 1)
            out << d.free_rank << " x ";
        out << "Z_" << m;
        first = false;
    }
    if (first)
        out << "trivial";
    return out.str();
}

std::string format_divisors(const std::vector<std::int64_t>& ds) {
    if (ds.empty())
        return "(none)";
    std::ostringstream out;
    for (std::size_t i = 0; i < ds.size(); ++i)
        out << (i ? " " : "") << ds[i];
    return out.str();
}

int run_index(const std::string& file, bool json) {
    UniformHypergraph g = load(file);
    IndexReport r = stabilizing_index(g);
    if (json) {
        std::cout << report_to_json(r);
        return 0;
    }
    std::cout << "m                   " << r.m << "\n"
              << "vertices            " << r.n << "\n"
              << "edges               " << r.k << "\n"
              << "invariant divisors  " << format_divisors(r.invariant_divisors) << "\n"
              << "free rank           " << r.free_rank << "\n"
              << "stabilizing index   " << r.stabilizing_index.str() << "\n"
              << "cyclic index        " << r.cyclic_index << "\n"
              << "decomposition       " << format_decomposition(r.decomposition, r.m) << "\n";
    return 0;
}

int run_snf(const std::string& file, bool verify) {
    UniformHypergraph g = load(file);
    require_valid(g);
    ZmMatrix b = incidence_matrix(g);
    SmithDecomposition dec = snf(b);
    const int n = g.vertex_count();
    const auto r = static_cast<int>(dec.rank());
    std::cout << "matrix              " << b.rows() << " x " << b.cols() << " over Z_"
              << g.uniformity() << "\n"
              << "invariant divisors  " << format_divisors(dec.divisors) << "\n"
              << "rank r              " << r << "\n"
              << "n - 1 - r           " << n - 1 - r << "\n"
              << "zero diagonal       " << dec.zero_rank_deficit << "\n";
    if (verify) {
        ZmMatrix product = dec.p.multiply(b).multiply(dec.q);
        bool ok = product == dec.diagonal(b.rows(), b.cols());
        std::cout << "P*B*Q == diag       " << (ok ? "OK" : "MISMATCH") << "\n";
        if (!ok)
            return kExitVerify;
    }
    return 0;
}

int run_coalesce(const std::string& file1, int v1, const std::string& file2, int v2,
                 const std::string& out) {
    UniformHypergraph g = coalesce(load(file1), v1, load(file2), v2);
    emit(serialize_uhg(g), out);
    return 0;
}

int run_cartesian(const std::vector<std::string>& files, const std::string& out) {
    std::vector<UniformHypergraph> factors;
    factors.reserve(files.size());
    for (const std::string& f : files)
        factors.push_back(load(f));
    emit(serialize_uhg(cartesian_product_n(factors)), out);
    return 0;
}

int run_generate(const GeneratorSpec& spec, const std::string& out) {
    emit(serialize_uhg(generate(spec)), out);
    return 0;
}

int run_blocks(const std::string& file) {
    UniformHypergraph g = load(file);
    BlockDecomposition dec = blocks(g);
    std::cout << "blocks        " << dec.blocks.size() << "\n";
    std::cout << "cut vertices  ";
    if (dec.cut_vertices.empty())
        std::cout << "(none)";
    for (std::size_t i = 0; i < dec.cut_vertices.size(); ++i)
        std::cout << (i ? " " : "") << dec.cut_vertices[i];
    std::cout << "\n";
    for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
        const Block& blk = dec.blocks[i];
        std::cout << "block " << i + 1 << ": n=" << blk.graph.vertex_count()
                  << " k=" << blk.graph.edge_count() << ", vertices";
        for (Vertex v : blk.vertex_map)
            std::cout << ' ' << v;
        std::cout << "\n";
    }
    return 0;
}

struct VerifyOptions {
    bool brute = false, spectral = false, compose = false;
    std::uint64_t cap = 1000000;
    double tol = 1e-10;
    int max_iter = 100000;
    int jobs = 1;
};

int run_verify(const std::string& file, VerifyOptions opt) {
    UniformHypergraph g = load(file);
    if (!opt.brute && !opt.spectral && !opt.compose)
        opt.brute = opt.spectral = opt.compose = true;
    IndexReport direct = stabilizing_index(g);
    bool failed = false;
    auto report = [&failed](const std::string& line, bool ok) {
        std::cout << line << (ok ? "  PASS" : "  FAIL") << "\n";
        failed |= !ok;
    };

    if (opt.brute) {
        try {
            std::uint64_t count = brute_stabilizing(g, opt.cap, opt.jobs);
            std::ostringstream line;
            line << "stabilizing (brute): direct " << direct.stabilizing_index.str()
                 << ", brute " << count;
            report(line.str(), BigInt(count) == direct.stabilizing_index);
        } catch (const CapExceededError& e) {
            std::cout << "stabilizing (brute): SKIPPED (" << e.cardinality().str()
                      << " assignments exceed cap " << opt.cap << ")\n";
        }
        try {
            std::int64_t c = brute_cyclic(g, opt.cap, opt.jobs);
            std::ostringstream line;
            line << "cyclic (brute): direct " << direct.cyclic_index << ", brute " << c;
            report(line.str(), c == direct.cyclic_index);
        } catch (const CapExceededError& e) {
            std::cout << "cyclic (brute): SKIPPED (" << e.cardinality().str()
                      << " colorings exceed cap " << opt.cap << ")\n";
        }
    }

    if (opt.spectral) {
        try {
            SpectralEstimate est = power_iteration(g, opt.tol, opt.max_iter);
            auto exponents = eigenvector_exponents(g, opt.cap);
            auto checks = lift_and_check(g, est, exponents);
            double worst = 0.0;
            for (const EigenvectorCheck& c : checks)
                worst = std::max(worst, c.residual);
            double threshold = 10.0 * (est.residual + est.tolerance);
            bool ok = BigInt(checks.size()) == direct.stabilizing_index && worst <= threshold;
            std::ostringstream line;
            line << "spectral: rho " << est.rho << ", " << checks.size()
                 << " eigenvectors, max residual " << worst << " (threshold " << threshold
                 << ")";
            report(line.str(), ok);
        } catch (const CapExceededError& e) {
            std::cout << "spectral: SKIPPED (" << e.cardinality().str()
                      << " eigenvectors exceed cap " << opt.cap << ")\n";
        } catch (const ConvergenceError& e) {
            report(std::string("spectral: ") + e.what(), false);
        }
    }

    if (opt.compose) {
        BlockDecomposition dec = blocks(g);
        IndexReport predicted;
        if (dec.blocks.size() == 1) {
            predicted = stabilizing_index(dec.blocks[0].graph);
        } else {
            std::vector<IndexReport> parts;
            parts.reserve(dec.blocks.size());
            for (const Block& blk : dec.blocks)
                parts.push_back(stabilizing_index(blk.graph));
            predicted = predict_blocks(parts);
        }
        std::ostringstream line;
        line << "compose (" << dec.blocks.size() << " blocks): predicted s "
             << predicted.stabilizing_index.str() << " c " << predicted.cyclic_index
             << ", direct s " << direct.stabilizing_index.str() << " c "
             << direct.cyclic_index;
        report(line.str(), predicted.stabilizing_index == direct.stabilizing_index &&
                               predicted.cyclic_index == direct.cyclic_index);
    }

    return failed ? kExitVerify : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabilizing and cyclic indices of uniform hypergraphs"};
    app.require_subcommand(1);
    int exit_code = 0;

    auto* cmd_index = app.add_subcommand("index", "compute s(G) and c(G) of a .uhg file");
    std::string index_file;
    bool index_json = false;
    cmd_index->add_option("file", index_file, ".uhg input")->required();
    cmd_index->add_flag("--json", index_json, "emit the JSON report");
    cmd_index->callback([&] { exit_code = run_index(index_file, index_json); });

    auto* cmd_snf = app.add_subcommand("snf", "Smith normal form of the incidence matrix");
    std::string snf_file;
    bool snf_verify = false;
    cmd_snf->add_option("file", snf_file, ".uhg input")->required();
    cmd_snf->add_flag("--verify", snf_verify, "re-multiply P*B*Q and compare");
    cmd_snf->callback([&] { exit_code = run_snf(snf_file, snf_verify); });

    auto* cmd_coalesce = app.add_subcommand("coalesce", "identify vertex v1 of G1 with v2 of G2");
    std::string co_file1, co_file2, co_out;
    int co_v1 = 0, co_v2 = 0;
    cmd_coalesce->add_option("file1", co_file1, "first .uhg input")->required();
    cmd_coalesce->add_option("v1", co_v1, "vertex of G1")->required();
    cmd_coalesce->add_option("file2", co_file2, "second .uhg input")->required();
    cmd_coalesce->add_option("v2", co_v2, "vertex of G2")->required();
    cmd_coalesce->add_option("-o,--output", co_out, "output path (default stdout)");
    cmd_coalesce->callback(
        [&] { exit_code = run_coalesce(co_file1, co_v1, co_file2, co_v2, co_out); });

    auto* cmd_cartesian = app.add_subcommand("cartesian", "Cartesian product of two or more files");
    std::vector<std::string> ca_files;
    std::string ca_out;
    cmd_cartesian->add_option("files", ca_files, ".uhg inputs")->required()->expected(-2);
    cmd_cartesian->add_option("-o,--output", ca_out, "output path (default stdout)");
    cmd_cartesian->callback([&] { exit_code = run_cartesian(ca_files, ca_out); });

    auto* cmd_generate = app.add_subcommand("generate", "write a generated hypergraph");
    GeneratorSpec gen_spec{GeneratorKind::single_edge};
    std::string gen_out;
    std::map<std::string, GeneratorKind> kinds{
        {"single_edge", GeneratorKind::single_edge},
        {"path_hypertree", GeneratorKind::path_hypertree},
        {"random_hypertree", GeneratorKind::random_hypertree},
        {"complete", GeneratorKind::complete},
        {"loose_cycle", GeneratorKind::loose_cycle}};
    cmd_generate->add_option("--kind", gen_spec.kind, "generator")
        ->required()
        ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
    cmd_generate->add_option("-m,--uniformity", gen_spec.m, "edge size")->required();
    cmd_generate->add_option("--edges", gen_spec.edges, "edge count (trees, cycles)");
    cmd_generate->add_option("--vertices", gen_spec.vertices, "vertex count (complete)");
    cmd_generate->add_option("--seed", gen_spec.seed, "random seed (random_hypertree)");
    cmd_generate->add_option("-o,--output", gen_out, "output path (default stdout)");
    cmd_generate->callback([&] { exit_code = run_generate(gen_spec, gen_out); });

    auto* cmd_blocks = app.add_subcommand("blocks", "block decomposition and cut vertices");
    std::string blocks_file;
    cmd_blocks->add_option("file", blocks_file, ".uhg input")->required();
    cmd_blocks->callback([&] { exit_code = run_blocks(blocks_file); });

    auto* cmd_verify = app.add_subcommand("verify", "cross-check s(G) and c(G) against oracles");
    std::string verify_file;
    VerifyOptions vopt;
    cmd_verify->add_option("file", verify_file, ".uhg input")->required();
    cmd_verify->add_flag("--brute", vopt.brute, "exhaustive assignment counts");
    cmd_verify->add_flag("--spectral", vopt.spectral, "power iteration and eigenvector lifting");
    cmd_verify->add_flag("--compose", vopt.compose, "block decomposition vs direct");
    cmd_verify->add_option("--cap", vopt.cap, "enumeration cap (default 1e6)");
    cmd_verify->add_option("--tol", vopt.tol, "power iteration tolerance");
    cmd_verify->add_option("--max-iter", vopt.max_iter, "power iteration limit");
    cmd_verify->add_option("--jobs", vopt.jobs, "threads for brute-force scans");
    cmd_verify->callback([&] { exit_code = run_verify(verify_file, vopt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitIo;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const hyperindex::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return exit_code;
}
