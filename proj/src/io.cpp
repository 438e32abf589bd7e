#include "hyperindex/io.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hyperindex/errors.hpp"

namespace hyperindex {

namespace {

struct Line {
    int number = 0; // 1-based
    std::string_view text;
};

std::vector<Line> significant_lines(std::string_view text, std::vector<std::string>& comments) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        if (nl == std::string_view::npos && line.empty())
            break;
        ++number;
        if (line.ends_with('\r'))
            line.remove_suffix(1);
        if (line.starts_with('#'))
            comments.emplace_back(line);
        else if (line.find_first_not_of(" \t") != std::string_view::npos)
            out.push_back({number, line});
        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    return out;
}

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t start = line.find_first_not_of(" \t", pos);
        if (start == std::string_view::npos)
            break;
        std::size_t end = line.find_first_of(" \t", start);
        if (end == std::string_view::npos)
            end = line.size();
        out.push_back(line.substr(start, end - start));
        pos = end;
    }
    return out;
}

int parse_int(std::string_view tok, int line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "not an integer: '" + std::string(tok) + "'");
    return value;
}

} // namespace

UhgDocument parse_uhg(std::string_view text) {
    std::vector<std::string> comments;
    std::vector<Line> lines = significant_lines(text, comments);
    if (lines.empty())
        throw ParseError(1, "empty input, expected 'uhg 1' header");

    auto header = tokens(lines[0].text);
    if (header.size() != 2 || header[0] != "uhg")
        throw ParseError(lines[0].number, "expected 'uhg <version>' header");
    const int version = parse_int(header[1], lines[0].number);
    if (version != 1)
        throw ParseError(lines[0].number,
                         "unsupported format version " + std::to_string(version));

    if (lines.size() < 2)
        throw ParseError(lines[0].number + 1, "missing 'm n k' line");
    auto dims = tokens(lines[1].text);
    if (dims.size() != 3)
        throw ParseError(lines[1].number, "expected exactly three integers 'm n k'");
    const int m = parse_int(dims[0], lines[1].number);
    const int n = parse_int(dims[1], lines[1].number);
    const int k = parse_int(dims[2], lines[1].number);
    if (m < 2)
        throw ParseError(lines[1].number, "uniformity m must be at least 2");
    if (n < 1)
        throw ParseError(lines[1].number, "vertex count n must be at least 1");
    if (k < 0)
        throw ParseError(lines[1].number, "edge count k must be nonnegative");

    if (lines.size() > static_cast<std::size_t>(2 + k))
        throw ParseError(lines[2 + k].number, "unexpected content after " + std::to_string(k) +
                                                  " edge lines");
    if (lines.size() < static_cast<std::size_t>(2 + k)) {
        int last = lines.back().number;
        throw ParseError(last + 1, "expected " + std::to_string(k) + " edge lines, found " +
                                       std::to_string(lines.size() - 2));
    }

    std::vector<Edge> edges;
    edges.reserve(k);
    std::set<Edge> seen;
    for (int i = 0; i < k; ++i) {
        const Line& ln = lines[2 + i];
        auto toks = tokens(ln.text);
        if (toks.size() != static_cast<std::size_t>(m))
            throw ParseError(ln.number, "edge has " + std::to_string(toks.size()) +
                                            " vertices, expected " + std::to_string(m));
        Edge e(m);
        for (int j = 0; j < m; ++j) {
            e[j] = parse_int(toks[j], ln.number);
            if (e[j] < 1 || e[j] > n)
                throw ParseError(ln.number, "vertex label " + std::to_string(e[j]) +
                                                " out of range 1.." + std::to_string(n));
        }
        Edge canon = e;
        std::sort(canon.begin(), canon.end());
        if (std::adjacent_find(canon.begin(), canon.end()) != canon.end())
            throw ParseError(ln.number, "repeated vertex within edge");
        if (!seen.insert(canon).second)
            throw ParseError(ln.number, "duplicate edge");
        edges.push_back(std::move(e));
    }

    return UhgDocument{version, UniformHypergraph(m, n, std::move(edges)), std::move(comments)};
}

std::string serialize_uhg(const UniformHypergraph& g) {
    if (ValidationResult v = validate(g); !v)
        throw DomainError("cannot serialize invalid hypergraph: " + v.message);
    std::ostringstream out;
    out << "uhg 1\n"
        << g.uniformity() << ' ' << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            out << (i ? " " : "") << e[i];
        out << '\n';
    }
    return out.str();
}

std::string report_to_json(const IndexReport& r) {
    nlohmann::ordered_json j;
    j["m"] = r.m;
    j["n"] = r.n;
    j["k"] = r.k;
    j["invariant_divisors"] = r.invariant_divisors;
    j["free_rank"] = r.free_rank;
    j["stabilizing_index"] = r.stabilizing_index.str();
    j["cyclic_index"] = r.cyclic_index;
    j["decomposition"] = nlohmann::ordered_json{{"cyclic_orders", r.decomposition.cyclic_orders},
                                                {"free_rank", r.decomposition.free_rank}};
    j["method"] = method_name(r.method);
    return j.dump(2) + "\n";
}

} // namespace hyperindex
