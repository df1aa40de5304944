#include "collidere/expr.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "collidere/decompose.hpp"
#include "collidere/json_io.hpp"

namespace collidere {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::SyntaxError,
                    what + " at offset " + std::to_string(pos) + " in '" + text + "'",
                    {static_cast<long long>(pos)});
    }
};

long long read_count(Cursor& c) {
    long long v = 0;
    bool any = false;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        any = true;
        v = v * 10 + (c.peek() - '0');
        if (v > 1'000'000LL) c.fail("count too large");
        ++c.pos;
    }
    if (!any) return 1;
    if (v < 1) c.fail("count must be >= 1");
    return v;
}

std::string read_name(Cursor& c) {
    std::size_t start = c.pos;
    if (c.done() || !std::isalpha(static_cast<unsigned char>(c.peek()))) c.fail("expected a type name");
    ++c.pos;
    if (!c.done() && c.peek() == '_') ++c.pos;
    if (!c.done() && (c.peek() == '(' || c.peek() == '{')) {
        char close = c.peek() == '(' ? ')' : '}';
        ++c.pos;
        while (!c.done() && c.peek() != close) ++c.pos;
        if (c.done()) c.fail("unterminated type name");
        ++c.pos;
    } else {
        while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
    }
    return c.text.substr(start, c.pos - start);
}

std::string read_path(Cursor& c) {
    std::size_t start = c.pos;
    while (!c.done() && c.peek() != '+') ++c.pos;
    std::string path = c.text.substr(start, c.pos - start);
    while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back()))) path.pop_back();
    if (path.empty()) c.fail("expected a graph file path after '@'");
    return path;
}

}  // namespace

TypeExpression parse_expression(const std::string& text) {
    TypeExpression out;
    out.text = text;
    Cursor c{text};
    c.skip_space();
    if (c.done()) c.fail("empty expression");
    while (true) {
        c.skip_space();
        long long count = read_count(c);
        c.skip_space();
        if (c.done()) c.fail("expected a type after count");
        SingularityType t = [&] {
            if (c.peek() == '@') {
                ++c.pos;
                return canonical_form(load_graph_file(read_path(c)));
            }
            return make_named_type(read_name(c));
        }();
        for (long long i = 0; i < count; ++i) out.types.push_back(t);
        c.skip_space();
        if (c.done()) break;
        if (c.peek() != '+') c.fail("expected '+'");
        ++c.pos;
    }
    out.types = normalize_targets(std::move(out.types));
    return out;
}

namespace {

std::string joined_expression(const std::vector<SingularityType>& types,
                              const std::string& separator) {
    std::vector<SingularityType> sorted = normalize_targets(types);
    std::string out;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        if (!out.empty()) out += separator;
        if (j - i > 1) out += std::to_string(j - i);
        out += sorted[i].display();
        i = j;
    }
    return out;
}

}  // namespace

std::string print_expression(const std::vector<SingularityType>& types) {
    return joined_expression(types, "+");
}

std::string print_expression_spaced(const std::vector<SingularityType>& types) {
    return joined_expression(types, " + ");
}

}  // namespace collidere
