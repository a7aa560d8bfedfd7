#include "itr/serialize.hpp"

#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

#include "itr/errors.hpp"

namespace itr {

namespace {

using nlohmann::json;

// Upper bound on n accepted from files; the adjacency matrix is n^2 bytes.
constexpr std::int64_t kMaxVertices = 4096;

// Counts newlines as nlohmann's lexer pulls characters, so SAX callbacks can
// be attributed to a source line.
struct LineCursor {
    int newlines = 0;
    char last = 0;
};

class CountingIterator {
public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    CountingIterator(const char* p, LineCursor* cursor) : p_(p), cursor_(cursor) {}

    reference operator*() const { return *p_; }
    CountingIterator& operator++() {
        cursor_->last = *p_;
        if (*p_ == '\n') ++cursor_->newlines;
        ++p_;
        return *this;
    }
    CountingIterator operator++(int) {
        auto copy = *this;
        ++*this;
        return copy;
    }
    bool operator==(const CountingIterator& other) const { return p_ == other.p_; }
    bool operator!=(const CountingIterator& other) const { return p_ != other.p_; }

private:
    const char* p_;
    LineCursor* cursor_;
};

struct Node {
    enum class Kind { Null, Bool, Integer, Float, String, Array, Object };
    Kind kind = Kind::Null;
    std::int64_t integer = 0;
    bool too_large = false;
    std::vector<Node> items;
    std::vector<std::pair<std::string, Node>> fields;
    int line = 0;
};

class LocatingHandler {
public:
    explicit LocatingHandler(const LineCursor* cursor) : cursor_(cursor) {}

    bool null() { return scalar(Node::Kind::Null, line()); }
    bool boolean(bool) { return scalar(Node::Kind::Bool, line()); }
    bool number_integer(json::number_integer_t v) {
        Node n;
        n.kind = Node::Kind::Integer;
        n.integer = v;
        n.line = number_line();
        return attach(std::move(n));
    }
    bool number_unsigned(json::number_unsigned_t v) {
        Node n;
        n.kind = Node::Kind::Integer;
        if (v > static_cast<json::number_unsigned_t>(std::numeric_limits<std::int64_t>::max())) {
            n.too_large = true;
            n.integer = std::numeric_limits<std::int64_t>::max();
        } else {
            n.integer = static_cast<std::int64_t>(v);
        }
        n.line = number_line();
        return attach(std::move(n));
    }
    bool number_float(json::number_float_t, const json::string_t&) { return scalar(Node::Kind::Float, number_line()); }
    bool string(json::string_t&) { return scalar(Node::Kind::String, line()); }
    bool binary(json::binary_t&) { return scalar(Node::Kind::String, line()); }

    bool start_object(std::size_t) { return open(Node::Kind::Object); }
    bool key(json::string_t& k) {
        stack_.back().pending_key = k;
        return true;
    }
    bool end_object() { return close(); }
    bool start_array(std::size_t) { return open(Node::Kind::Array); }
    bool end_array() { return close(); }

    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) {
        throw ParseError(line(), std::string("malformed JSON: ") + ex.what());
    }

    Node take_root() { return std::move(root_); }

private:
    struct Frame {
        Node node;
        std::string pending_key;
    };

    int line() const { return cursor_->newlines + 1; }
    // A number token is only complete once the lexer has read the character
    // after it; that lookahead must not count.
    int number_line() const { return cursor_->newlines + 1 - (cursor_->last == '\n' ? 1 : 0); }

    bool scalar(Node::Kind kind, int at) {
        Node n;
        n.kind = kind;
        n.line = at;
        return attach(std::move(n));
    }

    bool open(Node::Kind kind) {
        Frame f;
        f.node.kind = kind;
        f.node.line = line();
        stack_.push_back(std::move(f));
        return true;
    }

    bool close() {
        Node done = std::move(stack_.back().node);
        stack_.pop_back();
        return attach(std::move(done));
    }

    bool attach(Node n) {
        if (stack_.empty()) {
            root_ = std::move(n);
            return true;
        }
        auto& top = stack_.back();
        if (top.node.kind == Node::Kind::Object) {
            top.node.fields.emplace_back(std::move(top.pending_key), std::move(n));
            top.pending_key.clear();
        } else {
            top.node.items.push_back(std::move(n));
        }
        return true;
    }

    const LineCursor* cursor_;
    std::vector<Frame> stack_;
    Node root_;
};

int as_int(const Node& n, const char* what) {
    if (n.kind != Node::Kind::Integer) throw ParseError(n.line, std::string(what) + " must be an integer");
    if (n.too_large || n.integer > std::numeric_limits<int>::max() || n.integer < std::numeric_limits<int>::min())
        throw ParseError(n.line, std::string(what) + " is out of range");
    return static_cast<int>(n.integer);
}

Instance interpret(const Node& root) {
    if (root.kind != Node::Kind::Object) throw ParseError(root.line, "instance must be a JSON object");
    const Node* n_node = nullptr;
    const Node* edges_node = nullptr;
    const Node* blocks_node = nullptr;
    for (const auto& [key, value] : root.fields) {
        const Node** slot = nullptr;
        if (key == "n") slot = &n_node;
        else if (key == "edges") slot = &edges_node;
        else if (key == "blocks") slot = &blocks_node;
        else throw ParseError(value.line, "unknown key \"" + key + "\"");
        if (*slot) throw ParseError(value.line, "duplicate key \"" + key + "\"");
        *slot = &value;
    }
    if (!n_node) throw ParseError(root.line, "missing key \"n\"");
    if (!edges_node) throw ParseError(root.line, "missing key \"edges\"");
    if (!blocks_node) throw ParseError(root.line, "missing key \"blocks\"");

    const int n = as_int(*n_node, "\"n\"");
    if (n < 0 || n > kMaxVertices) throw ParseError(n_node->line, "\"n\" must lie in [0, " + std::to_string(kMaxVertices) + "]");

    if (edges_node->kind != Node::Kind::Array) throw ParseError(edges_node->line, "\"edges\" must be an array");
    std::vector<Edge> edges;
    std::set<Edge> seen_edges;
    for (const auto& e : edges_node->items) {
        if (e.kind != Node::Kind::Array || e.items.size() != 2)
            throw ParseError(e.line, "edge must be an array of two vertex ids");
        int u = as_int(e.items[0], "edge endpoint");
        int v = as_int(e.items[1], "edge endpoint");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(e.line, "edge [" + std::to_string(u) + "," + std::to_string(v) + "] has an endpoint out of range");
        if (u == v) throw ParseError(e.line, "self-loop at vertex " + std::to_string(u));
        Edge key{std::min(u, v), std::max(u, v)};
        if (!seen_edges.insert(key).second)
            throw ParseError(e.line, "duplicate edge [" + std::to_string(key.first) + "," + std::to_string(key.second) + "]");
        edges.push_back(key);
    }

    if (blocks_node->kind != Node::Kind::Array) throw ParseError(blocks_node->line, "\"blocks\" must be an array");
    std::vector<VertexSet> blocks;
    std::vector<int> owner(n, -1);
    for (std::size_t i = 0; i < blocks_node->items.size(); ++i) {
        const Node& b = blocks_node->items[i];
        if (b.kind != Node::Kind::Array) throw ParseError(b.line, "block must be an array of vertex ids");
        if (b.items.empty()) throw ParseError(b.line, "block " + std::to_string(i) + " is empty");
        VertexSet block;
        for (const auto& item : b.items) {
            int v = as_int(item, "block member");
            if (v < 0 || v >= n) throw ParseError(item.line, "vertex " + std::to_string(v) + " out of range");
            if (owner[v] != -1)
                throw ParseError(item.line, "blocks not disjoint: vertex " + std::to_string(v) + " in blocks " +
                                                std::to_string(owner[v]) + " and " + std::to_string(i));
            owner[v] = static_cast<int>(i);
            block.push_back(v);
        }
        blocks.push_back(make_set(std::move(block)));
    }
    for (int v = 0; v < n; ++v)
        if (owner[v] == -1)
            throw ParseError(blocks_node->line, "union of blocks != vertex set: vertex " + std::to_string(v) + " is in no block");

    return Instance(Graph(n, edges), std::move(blocks));
}

}  // namespace

json instance_to_json(const Instance& instance) {
    json edges = json::array();
    for (auto [u, v] : instance.graph().edges()) edges.push_back({u, v});
    json blocks = json::array();
    for (const auto& b : instance.blocks()) blocks.push_back(b);
    return json{{"n", instance.vertex_count()}, {"edges", std::move(edges)}, {"blocks", std::move(blocks)}};
}

std::string to_canonical_json(const Instance& instance) { return instance_to_json(instance).dump() + "\n"; }

Instance parse_instance(std::string_view text) {
    LineCursor cursor;
    LocatingHandler handler(&cursor);
    CountingIterator first(text.data(), &cursor);
    CountingIterator last(text.data() + text.size(), &cursor);
    json::sax_parse(first, last, &handler);
    return interpret(handler.take_root());
}

Instance instance_from_json(const json& doc) { return parse_instance(doc.dump()); }

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

}  // namespace itr
