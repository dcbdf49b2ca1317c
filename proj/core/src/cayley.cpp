#include "pblocks/cayley.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <numeric>

#include "pblocks/error.hpp"

namespace pblocks {

Word free_reduce(Word w)
{
    Word out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

Word inverse_word(const Word &w)
{
    Word out(w.rbegin(), w.rend());
    for (int &x : out)
        x = -x;
    return out;
}

std::size_t Presentation::generator_index(std::string_view name) const
{
    auto it = std::find(generators.begin(), generators.end(), name);
    if (it == generators.end())
        throw Error(ErrorKind::ParseError, "unknown generator", std::string(name));
    return static_cast<std::size_t>(it - generators.begin());
}

std::string Presentation::format(const Word &w) const
{
    if (w.empty())
        return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i])
            ++j;
        if (!out.empty())
            out += '*';
        out += generators[static_cast<std::size_t>(std::abs(w[i])) - 1];
        const long k = static_cast<long>(j - i) * (w[i] < 0 ? -1 : 1);
        if (k != 1)
            out += "^" + std::to_string(k);
        i = j;
    }
    return out;
}

std::string Presentation::describe() const
{
    std::string out = "<";
    for (std::size_t i = 0; i < generators.size(); ++i)
        out += (i ? " " : "") + generators[i];
    out += " |";
    for (std::size_t i = 0; i < relators.size(); ++i)
        out += (i ? ", " : " ") + format(relators[i]);
    return out + ">";
}

namespace {

std::string trim(std::string_view s)
{
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return std::string(s.substr(a, b - a));
}

// Splits at `sep` outside brackets.
std::vector<std::string> split_top(std::string_view s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(' || c == '[')
            ++depth;
        else if (c == ')' || c == ']')
            --depth;
        else if (c == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

class WordParser {
public:
    WordParser(std::string_view text, const Presentation &pr) : s_(text), pr_(pr) {}

    Word parse()
    {
        Word lhs = product();
        skip();
        if (peek() == '=') {
            ++pos_;
            const Word rhs = inverse_word(product());
            lhs.insert(lhs.end(), rhs.begin(), rhs.end());
        }
        skip();
        if (pos_ != s_.size())
            fail("unexpected character");
        return free_reduce(lhs);
    }

private:
    [[noreturn]] void fail(const std::string &what) const
    {
        throw Error(ErrorKind::ParseError, what + " at offset " + std::to_string(pos_), std::string(s_));
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    Word product()
    {
        Word w;
        for (;;) {
            skip();
            const char c = peek();
            if (c == '*') {
                ++pos_;
                continue;
            }
            if (c == '(' || c == '[' || std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                Word f = factor();
                w.insert(w.end(), f.begin(), f.end());
                continue;
            }
            if (c == '1' && (pos_ + 1 == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
                ++pos_;
                continue;
            }
            break;
        }
        return w;
    }

    Word factor()
    {
        Word base = atom();
        skip();
        if (peek() == '^') {
            ++pos_;
            skip();
            long k = integer();
            Word out;
            const Word unit = k < 0 ? inverse_word(base) : base;
            for (long i = 0; i < std::abs(k); ++i)
                out.insert(out.end(), unit.begin(), unit.end());
            return out;
        }
        return base;
    }

    long integer()
    {
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an exponent");
        long v = 0;
        std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (v > 100000)
            fail("exponent too large");
        return neg ? -v : v;
    }

    Word atom()
    {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Word w = product();
            skip();
            if (peek() != ')')
                fail("expected ')'");
            ++pos_;
            return w;
        }
        if (c == '[') {
            ++pos_;
            Word x = product();
            skip();
            if (peek() != ',')
                fail("expected ',' in commutator");
            ++pos_;
            Word y = product();
            skip();
            if (peek() != ']')
                fail("expected ']'");
            ++pos_;
            Word w = inverse_word(x);
            const Word yi = inverse_word(y);
            w.insert(w.end(), yi.begin(), yi.end());
            w.insert(w.end(), x.begin(), x.end());
            w.insert(w.end(), y.begin(), y.end());
            return w;
        }
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (start == pos_)
            fail("expected a generator");
        const std::string name(s_.substr(start, pos_ - start));
        auto it = std::find(pr_.generators.begin(), pr_.generators.end(), name);
        if (it == pr_.generators.end())
            fail("unknown generator '" + name + "'");
        return Word{static_cast<int>(it - pr_.generators.begin()) + 1};
    }

    std::string_view s_;
    const Presentation &pr_;
    std::size_t pos_ = 0;
};

Word parse_word(std::string_view text, const Presentation &pr)
{
    return WordParser(text, pr).parse();
}

Word power(int letter, int k)
{
    return Word(static_cast<std::size_t>(k), letter);
}

long parse_count(const std::string &s, const std::string &what)
{
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw Error(ErrorKind::ParseError, "expected an integer for " + what, s);
    return v;
}

} // namespace

Presentation surface_presentation(std::size_t p, const std::vector<int> &exponents, std::size_t s,
                                  const std::vector<std::string> &extras)
{
    for (int m : exponents)
        if (m < 2)
            throw Error(ErrorKind::BadExponent, "torsion exponents must be at least 2", std::to_string(m));
    Presentation pr;
    for (std::size_t i = 1; i <= p; ++i) {
        pr.generators.push_back("a" + std::to_string(i));
        pr.generators.push_back("b" + std::to_string(i));
    }
    for (std::size_t j = 1; j <= exponents.size(); ++j)
        pr.generators.push_back("e" + std::to_string(j));
    for (std::size_t k = 1; k <= s; ++k)
        pr.generators.push_back("f" + std::to_string(k));
    pr.shape = SurfaceShape{p, exponents, s};

    const int e0 = static_cast<int>(2 * p);
    for (std::size_t j = 0; j < exponents.size(); ++j)
        pr.relators.push_back(power(e0 + static_cast<int>(j) + 1, exponents[j]));
    for (const auto &x : extras) {
        Word w = parse_word(x, pr);
        if (!w.empty())
            pr.relators.push_back(std::move(w));
    }
    Word surface;
    for (std::size_t i = 0; i < p; ++i) {
        const int a = static_cast<int>(2 * i) + 1;
        const int b = a + 1;
        surface.insert(surface.end(), {-a, -b, a, b});
    }
    for (std::size_t j = 0; j < exponents.size() + s; ++j)
        surface.push_back(e0 + static_cast<int>(j) + 1);
    surface = free_reduce(surface);
    if (!surface.empty())
        pr.relators.push_back(std::move(surface));
    return pr;
}

Presentation parse_presentation(std::string_view text)
{
    std::string clean;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '#') {
            while (i < text.size() && text[i] != '\n')
                ++i;
            clean += '\n';
            continue;
        }
        clean += text[i];
    }
    std::optional<Presentation> pr;
    std::vector<std::string> pending_extras;
    bool surface = false;
    for (std::string stmt : split_top(clean, ';')) {
        if (stmt.empty())
            continue;
        if (stmt.rfind("surface", 0) == 0) {
            if (pr)
                throw Error(ErrorKind::ParseError, "generators declared twice", stmt);
            const auto open = stmt.find('(');
            const auto close = stmt.rfind(')');
            if (open == std::string::npos || close == std::string::npos || close < open)
                throw Error(ErrorKind::ParseError, "malformed surface(...) form", stmt);
            const auto args = split_top(std::string_view(stmt).substr(open + 1, close - open - 1), ',');
            if (args.size() != 3 || args[1].size() < 2 || args[1].front() != '[' || args[1].back() != ']')
                throw Error(ErrorKind::ParseError, "surface form is surface(p, [m...], s)", stmt);
            const long p = parse_count(args[0], "p");
            const long s = parse_count(args[2], "s");
            if (p < 0 || s < 0 || p > 64 || s > 64)
                throw Error(ErrorKind::ParseError, "p and s must be small non-negative integers", stmt);
            std::vector<int> m;
            const std::string inner = trim(std::string_view(args[1]).substr(1, args[1].size() - 2));
            if (!inner.empty())
                for (const auto &x : split_top(inner, ','))
                    m.push_back(static_cast<int>(parse_count(x, "exponent")));
            pr = surface_presentation(static_cast<std::size_t>(p), m, static_cast<std::size_t>(s));
            surface = true;
            continue;
        }
        const auto colon = stmt.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorKind::ParseError, "expected 'gens:', 'rels:' or surface(...)", stmt);
        const std::string key = trim(std::string_view(stmt).substr(0, colon));
        const std::string body(std::string_view(stmt).substr(colon + 1));
        if (key == "gens") {
            if (pr)
                throw Error(ErrorKind::ParseError, "generators declared twice", stmt);
            pr.emplace();
            std::string name;
            for (char c : body + " ") {
                if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                    name += c;
                } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
                    if (!name.empty()) {
                        if (std::isdigit(static_cast<unsigned char>(name[0])))
                            throw Error(ErrorKind::ParseError, "generator names start with a letter", name);
                        if (std::find(pr->generators.begin(), pr->generators.end(), name) != pr->generators.end())
                            throw Error(ErrorKind::ParseError, "duplicate generator", name);
                        pr->generators.push_back(name);
                        name.clear();
                    }
                } else {
                    throw Error(ErrorKind::ParseError, "bad character in generator list", std::string(1, c));
                }
            }
            if (pr->generators.empty())
                throw Error(ErrorKind::ParseError, "no generators declared");
        } else if (key == "rels") {
            if (!pr)
                throw Error(ErrorKind::ParseError, "relators before generators", stmt);
            if (trim(body).empty())
                continue;
            for (const auto &r : split_top(body, ','))
                if (!r.empty())
                    pending_extras.push_back(r);
        } else {
            throw Error(ErrorKind::ParseError, "unknown statement", key);
        }
    }
    if (!pr)
        throw Error(ErrorKind::ParseError, "no generators declared");
    std::vector<Word> extra;
    for (const auto &r : pending_extras) {
        Word w = parse_word(r, *pr);
        if (!w.empty())
            extra.push_back(std::move(w));
    }
    if (surface) {
        // Extras sit between the torsion relators and the surface relator.
        const std::size_t torsion = pr->shape->exponents.size();
        pr->relators.insert(pr->relators.begin() + static_cast<std::ptrdiff_t>(torsion), extra.begin(), extra.end());
    } else {
        pr->relators = std::move(extra);
    }
    return *pr;
}

namespace {

class CosetTable {
public:
    CosetTable(const Presentation &pr, std::size_t workspace)
        : gens_(pr.generators.size()), workspace_(workspace)
    {
        for (const Word &w : pr.relators) {
            std::vector<std::size_t> cols;
            for (int x : w)
                cols.push_back(column(x));
            relators_.push_back(std::move(cols));
        }
        new_coset();
    }

    void enumerate()
    {
        for (std::size_t c = 0; c < table_.size(); ++c) {
            for (const auto &r : relators_) {
                if (!alive(c))
                    break;
                scan_and_fill(c, r);
            }
            for (std::size_t x = 0; x < 2 * gens_ && alive(c); ++x)
                if (table_[c][x] == undefined)
                    define(c, x);
        }
    }

    GroupTable compact() const
    {
        GroupTable t;
        std::vector<std::size_t> index(table_.size(), undefined);
        std::vector<std::size_t> live;
        for (std::size_t c = 0; c < table_.size(); ++c)
            if (alive(c)) {
                index[c] = live.size();
                live.push_back(c);
            }
        t.order = live.size();
        t.identity = 0;
        t.mult.assign(t.order, std::vector<std::size_t>(gens_));
        for (std::size_t k = 0; k < live.size(); ++k)
            for (std::size_t g = 0; g < gens_; ++g) {
                const std::size_t target = table_[live[k]][2 * g];
                if (target == undefined || index[target] == undefined)
                    throw Error(ErrorKind::InternalInvariant, "coset table is incomplete after enumeration");
                t.mult[k][g] = index[target];
            }
        return t;
    }

private:
    static constexpr std::size_t undefined = static_cast<std::size_t>(-1);

    static std::size_t column(int letter)
    {
        const std::size_t g = static_cast<std::size_t>(std::abs(letter)) - 1;
        return 2 * g + (letter < 0 ? 1 : 0);
    }
    static std::size_t inv(std::size_t col) { return col ^ 1U; }

    bool alive(std::size_t c) const { return parent_[c] == c; }

    std::size_t new_coset()
    {
        if (table_.size() >= workspace_)
            throw Error(ErrorKind::Overflow, "coset enumeration exceeded its workspace",
                        std::to_string(workspace_) + " cosets");
        table_.emplace_back(2 * gens_, undefined);
        parent_.push_back(table_.size() - 1);
        return table_.size() - 1;
    }

    void define(std::size_t c, std::size_t x)
    {
        const std::size_t d = new_coset();
        table_[c][x] = d;
        table_[d][inv(x)] = c;
    }

    void scan_and_fill(std::size_t c, const std::vector<std::size_t> &r)
    {
        if (r.empty())
            return;
        std::size_t f = c;
        std::size_t b = c;
        std::size_t i = 0;
        std::size_t j = r.size(); // one past the last unscanned letter
        for (;;) {
            while (i < j && table_[f][r[i]] != undefined)
                f = table_[f][r[i++]];
            if (i == j) {
                coincidence(f, b);
                return;
            }
            while (j > i && table_[b][inv(r[j - 1])] != undefined)
                b = table_[b][inv(r[--j])];
            if (j == i) {
                coincidence(f, b);
                return;
            }
            if (j == i + 1) {
                table_[f][r[i]] = b;
                table_[b][inv(r[i])] = f;
                return;
            }
            define(f, r[i]);
        }
    }

    std::size_t rep(std::size_t c)
    {
        std::size_t r = c;
        while (parent_[r] != r)
            r = parent_[r];
        while (parent_[c] != r) {
            const std::size_t next = parent_[c];
            parent_[c] = r;
            c = next;
        }
        return r;
    }

    void merge(std::size_t a, std::size_t b, std::vector<std::size_t> &queue)
    {
        a = rep(a);
        b = rep(b);
        if (a == b)
            return;
        if (a > b)
            std::swap(a, b);
        parent_[b] = a;
        queue.push_back(b);
    }

    void coincidence(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        std::vector<std::size_t> queue;
        merge(a, b, queue);
        for (std::size_t k = 0; k < queue.size(); ++k) {
            const std::size_t g = queue[k];
            for (std::size_t x = 0; x < 2 * gens_; ++x) {
                const std::size_t d = table_[g][x];
                if (d == undefined)
                    continue;
                table_[d][inv(x)] = undefined;
                const std::size_t mu = rep(g);
                const std::size_t nu = rep(d);
                if (table_[mu][x] != undefined)
                    merge(nu, table_[mu][x], queue);
                else if (table_[nu][inv(x)] != undefined)
                    merge(mu, table_[nu][inv(x)], queue);
                else {
                    table_[mu][x] = nu;
                    table_[nu][inv(x)] = mu;
                }
            }
        }
    }

    std::size_t gens_;
    std::size_t workspace_;
    std::vector<std::vector<std::size_t>> relators_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> parent_;
};

// Shortest words (BFS over generators) from the identity to each element.
std::vector<std::vector<std::size_t>> element_words(const GroupTable &t)
{
    std::vector<std::vector<std::size_t>> word(t.order);
    std::vector<bool> seen(t.order, false);
    std::deque<std::size_t> q{t.identity};
    seen[t.identity] = true;
    while (!q.empty()) {
        const std::size_t g = q.front();
        q.pop_front();
        for (std::size_t x = 0; x < t.mult[g].size(); ++x) {
            const std::size_t h = t.mult[g][x];
            if (!seen[h]) {
                seen[h] = true;
                word[h] = word[g];
                word[h].push_back(x);
                q.push_back(h);
            }
        }
    }
    return word;
}

} // namespace

GroupTable coset_enumerate(const Presentation &pr, std::size_t limit)
{
    if (limit == 0)
        throw Error(ErrorKind::PreconditionViolated, "limit must be positive");
    if (pr.generators.empty()) {
        GroupTable t;
        t.order = 1;
        t.mult.assign(1, {});
        return t;
    }
    const std::size_t workspace = std::clamp<std::size_t>(limit * 1000, 20000, 2000000);
    CosetTable table(pr, workspace);
    table.enumerate();
    GroupTable t = table.compact();
    if (t.order > limit)
        throw Error(ErrorKind::Overflow, "group order exceeds the limit",
                    std::to_string(t.order) + " > " + std::to_string(limit));
    if (auto bad = verify_table(t, pr))
        throw Error(ErrorKind::InternalInvariant, "coset table fails verification", *bad);
    return t;
}

std::optional<std::string> verify_table(const GroupTable &t, const Presentation &pr)
{
    if (t.mult.size() != t.order)
        return "table has " + std::to_string(t.mult.size()) + " rows for order " + std::to_string(t.order);
    const std::size_t k = pr.generators.size();
    std::vector<std::vector<std::size_t>> inv(t.order, std::vector<std::size_t>(k, t.order));
    for (std::size_t x = 0; x < k; ++x) {
        std::vector<bool> hit(t.order, false);
        for (std::size_t g = 0; g < t.order; ++g) {
            if (t.mult[g].size() != k || t.mult[g][x] >= t.order)
                return "row " + std::to_string(g) + " is malformed";
            if (hit[t.mult[g][x]])
                return "generator " + pr.generators[x] + " does not act as a permutation";
            hit[t.mult[g][x]] = true;
            inv[t.mult[g][x]][x] = g;
        }
    }
    for (std::size_t r = 0; r < pr.relators.size(); ++r)
        for (std::size_t g = 0; g < t.order; ++g) {
            std::size_t cur = g;
            for (int letter : pr.relators[r]) {
                const std::size_t x = static_cast<std::size_t>(std::abs(letter)) - 1;
                cur = letter > 0 ? t.mult[cur][x] : inv[cur][x];
            }
            if (cur != g)
                return "relator " + pr.format(pr.relators[r]) + " is not trivial at element " + std::to_string(g);
        }
    return std::nullopt;
}

Graph cayley_graph(const GroupTable &t, const Presentation &pr)
{
    std::vector<Edge> edges;
    for (std::size_t g = 0; g < t.order; ++g)
        for (std::size_t x = 0; x < pr.generators.size(); ++x) {
            const std::size_t h = t.mult[g][x];
            if (h != g)
                edges.push_back(make_edge(static_cast<VertexId>(g), static_cast<VertexId>(h)));
        }
    std::vector<VertexId> ids(t.order);
    std::iota(ids.begin(), ids.end(), 0);
    return Graph::from_edges(std::span<const Edge>(edges), ids);
}

std::vector<Permutation> regular_action(const GroupTable &t)
{
    const auto words = element_words(t);
    std::vector<Permutation> out(t.order, Permutation(t.order));
    for (std::size_t h = 0; h < t.order; ++h)
        for (std::size_t g = 0; g < t.order; ++g) {
            std::size_t cur = h;
            for (std::size_t x : words[g])
                cur = t.mult[cur][x];
            out[h][g] = cur;
        }
    return out;
}

RegularActionReport check_regular_action(const GroupTable &t, const Graph &cayley)
{
    RegularActionReport report;
    const auto action = regular_action(t);
    std::vector<bool> reached(t.order, false);
    for (std::size_t h = 0; h < t.order; ++h) {
        // Cayley vertices are element ids 0..order-1, so host index = element.
        if (!is_automorphism(cayley, action[h]))
            report.automorphisms = false;
        if (h != t.identity)
            for (std::size_t g = 0; g < t.order; ++g)
                if (action[h][g] == g)
                    report.free = false;
        reached[action[h][t.identity]] = true;
    }
    report.transitive = std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
    return report;
}

} // namespace pblocks
