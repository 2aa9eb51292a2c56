#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sigcon/errors.hpp"
#include "sigcon/signed_graph.hpp"

namespace sigcon {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

NodeId parse_id(std::string_view token, int line) {
    NodeId v = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc{} || ptr != end || v < 0) {
        throw ParseError(line, "invalid node id '" + std::string(token) + "'");
    }
    return v;
}

Sign parse_sign(std::string_view token, int line) {
    if (token == "+" || token == "+1" || token == "1") return Sign::Positive;
    if (token == "-" || token == "-1") return Sign::Negative;
    throw ParseError(line, "invalid sign '" + std::string(token) + "' (expected + or -)");
}

int node_count(const std::vector<Edge>& edges, const std::vector<NodeId>& leaders) {
    int n = 0;
    for (const Edge& e : edges) n = std::max({n, e.src + 1, e.dst + 1});
    for (NodeId v : leaders) n = std::max(n, v + 1);
    return n;
}

}  // namespace

SignedGraph parse_edge_list(std::string_view text, std::vector<std::string>* warnings) {
    constexpr std::string_view kLeaders = "#leaders:";
    std::vector<Edge> edges;
    std::vector<NodeId> leaders;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (line.substr(0, kLeaders.size()) == kLeaders) {
                for (auto tok : split_ws(line.substr(kLeaders.size()))) leaders.push_back(parse_id(tok, line_no));
            }
            continue;
        }
        const auto tokens = split_ws(line);
        if (tokens.size() != 3) {
            throw ParseError(line_no, "expected 'src dst sign', got " + std::to_string(tokens.size()) + " fields");
        }
        edges.push_back({parse_id(tokens[0], line_no), parse_id(tokens[1], line_no), parse_sign(tokens[2], line_no)});
    }
    const int n = node_count(edges, leaders);
    return SignedGraph::create(n, std::move(edges), std::move(leaders), warnings);
}

SignedGraph parse_graph_json(std::string_view text, std::vector<std::string>* warnings) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    try {
        std::vector<Edge> edges;
        for (const auto& item : doc.at("edges")) {
            if (!item.is_array() || item.size() != 3) throw ParseError(0, "edge entries must be [src, dst, sign]");
            const int s = item[2].get<int>();
            if (s != 1 && s != -1) throw ParseError(0, "edge sign must be +1 or -1");
            edges.push_back({item[0].get<NodeId>(), item[1].get<NodeId>(), s > 0 ? Sign::Positive : Sign::Negative});
        }
        std::vector<NodeId> leaders;
        if (doc.contains("leaders")) leaders = doc.at("leaders").get<std::vector<NodeId>>();
        const int n = doc.contains("n") ? doc.at("n").get<int>() : node_count(edges, leaders);
        return SignedGraph::create(n, std::move(edges), std::move(leaders), warnings);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("malformed graph document: ") + e.what());
    }
}

SignedGraph parse_graph(std::string_view text, std::vector<std::string>* warnings) {
    const auto body = trim(text);
    if (!body.empty() && body.front() == '{') return parse_graph_json(text, warnings);
    return parse_edge_list(text, warnings);
}

std::string to_edge_list(const SignedGraph& g) {
    std::ostringstream out;
    out << "#leaders:";
    for (NodeId v : g.leaders()) out << ' ' << v;
    out << '\n';
    for (const Edge& e : g.edges()) {
        out << e.src << ' ' << e.dst << ' ' << (e.sign == Sign::Positive ? '+' : '-') << '\n';
    }
    return out.str();
}

std::string to_graph_json(const SignedGraph& g) {
    nlohmann::json doc;
    doc["n"] = g.size();
    auto edges = nlohmann::json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.src, e.dst, to_int(e.sign)});
    doc["edges"] = std::move(edges);
    doc["leaders"] = std::vector<NodeId>(g.leaders().begin(), g.leaders().end());
    return doc.dump() + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::InvalidSpec, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::InvalidSpec, "cannot write '" + path + "'");
    out << contents;
}

}  // namespace sigcon
