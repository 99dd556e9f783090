#include "mag/dsl.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mag {

namespace {

enum class TokKind { Ident, Keyword, Diff, Int, String, Op, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    int line = 0;
    int col = 0;
};

const std::set<std::string>& keywords() {
    static const std::set<std::string> kw = {"system", "coords", "A", "B", "C", "D", "E",
                                             "theta",  "omega",  "integral", "surface",
                                             "normalform", "check"};
    return kw;
}

const std::set<std::string>& differentials() {
    static const std::set<std::string> d = {"dx", "dy", "dz", "dp", "dq", "dX",
                                            "dY", "dZ", "dP", "dQ", "du", "dv"};
    return d;
}

// Hyphenated check names lexed as single identifiers.
const std::set<std::string>& fused_idents() {
    static const std::set<std::string> f = {"derived-flag", "normal-form"};
    return f;
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (pos_ >= text_.size()) {
                out.push_back({TokKind::End, "", line_, col_});
                return out;
            }
            out.push_back(next_token());
        }
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    char cur() const { return text_[pos_]; }
    bool more() const { return pos_ < text_.size(); }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (more() && (cur() == ' ' || cur() == '\t' || cur() == '\r' || cur() == '\n'))
            advance();
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string lex_ident_chars() {
        std::string s;
        while (more() && ident_char(cur())) {
            s.push_back(cur());
            advance();
        }
        return s;
    }

    Token next_token() {
        int line = line_, col = col_;
        char c = cur();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string s;
            while (more() && std::isdigit(static_cast<unsigned char>(cur()))) {
                s.push_back(cur());
                advance();
            }
            return {TokKind::Int, s, line, col};
        }
        if (ident_start(c)) {
            std::string s = lex_ident_chars();
            // fuse hyphenated check names like derived-flag
            if (more() && cur() == '-') {
                std::size_t save_pos = pos_;
                int save_line = line_, save_col = col_;
                advance();
                if (more() && ident_start(cur())) {
                    std::string tail = lex_ident_chars();
                    if (fused_idents().count(s + "-" + tail))
                        return {TokKind::Ident, s + "-" + tail, line, col};
                }
                pos_ = save_pos;
                line_ = save_line;
                col_ = save_col;
            }
            if (differentials().count(s))
                return {TokKind::Diff, s, line, col};
            if (keywords().count(s))
                return {TokKind::Keyword, s, line, col};
            return {TokKind::Ident, s, line, col};
        }
        if (c == '"') {
            advance();
            std::string s;
            while (more() && cur() != '"') {
                if (cur() == '\n')
                    throw ParseError(line, col, "unterminated string literal", s);
                s.push_back(cur());
                advance();
            }
            if (!more())
                throw ParseError(line, col, "unterminated string literal", s);
            advance();
            return {TokKind::String, s, line, col};
        }
        if (c == '/') {
            advance();
            if (more() && cur() == '\\') {
                advance();
                return {TokKind::Op, "/\\", line, col};
            }
            return {TokKind::Op, "/", line, col};
        }
        switch (c) {
        case '+': case '-': case '*': case '^': case '(': case ')': case '=': case ',': case ':':
            advance();
            return {TokKind::Op, std::string(1, c), line, col};
        default:
            throw ParseError(line, col, "illegal character", std::string(1, c));
        }
    }
};

// ---------------------------------------------------------------------------

class Parser {
public:
    Parser(std::vector<Token> tokens, Chart chart, std::map<std::string, ScalarExpr> bindings)
        : tokens_(std::move(tokens)), chart_(std::move(chart)), bindings_(std::move(bindings)) {}

    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek() const { return tokens_[pos_]; }
    const Token& peek2() const { return tokens_[std::min(pos_ + 1, tokens_.size() - 1)]; }
    Token take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw ParseError(t.line, t.col, msg, t.text);
    }

    bool at_op(const std::string& s) const {
        return peek().kind == TokKind::Op && peek().text == s;
    }

    Token expect_op(const std::string& s) {
        if (!at_op(s))
            fail(peek(), "expected '" + s + "'");
        return take();
    }

    Token expect_kind(TokKind k, const std::string& what) {
        if (peek().kind != k)
            fail(peek(), "expected " + what);
        return take();
    }

    void set_chart(Chart chart) { chart_ = std::move(chart); }

    // expression parsing ----------------------------------------------------

    DiffForm parse_expr() {
        DiffForm lhs = parse_wedge();
        while (at_op("+") || at_op("-")) {
            Token op = take();
            DiffForm rhs = parse_wedge();
            if (lhs.degree() != rhs.degree() && !lhs.is_zero() && !rhs.is_zero())
                fail(op, "mixed degrees in sum");
            lhs = op.text == "+" ? lhs + rhs : lhs - rhs;
        }
        return lhs;
    }

    DiffForm parse_wedge() {
        DiffForm lhs = parse_term();
        while (at_op("/\\")) {
            take();
            lhs = wedge(lhs, parse_term());
        }
        return lhs;
    }

    DiffForm parse_term() {
        DiffForm lhs = parse_unary();
        while (at_op("*") || at_op("/")) {
            Token op = take();
            DiffForm rhs = parse_unary();
            if (op.text == "*") {
                if (lhs.degree() > 0 && rhs.degree() > 0)
                    fail(op, "cannot multiply two forms with * (use /\\)");
                lhs = lhs.degree() == 0 ? rhs * lhs.scalar_value() : lhs * rhs.scalar_value();
            } else {
                if (rhs.degree() != 0)
                    fail(op, "cannot divide by a differential form");
                if (rhs.scalar_value().is_zero())
                    fail(op, "division by zero");
                ScalarExpr inv = ScalarExpr::constant(chart_, 1) / rhs.scalar_value();
                lhs = lhs * inv;
            }
        }
        return lhs;
    }

    DiffForm parse_unary() {
        if (at_op("-")) {
            take();
            return -parse_unary();
        }
        return parse_power();
    }

    DiffForm parse_power() {
        DiffForm base = parse_primary();
        if (at_op("^")) {
            Token op = take();
            Token e = expect_kind(TokKind::Int, "a nonnegative integer exponent");
            if (base.degree() != 0)
                fail(op, "exponent requires a scalar base");
            if (e.text.size() > 4)
                fail(e, "exponent too large");
            int exp = std::stoi(e.text);
            return DiffForm::from_scalar(base.scalar_value().pow(exp));
        }
        return base;
    }

    DiffForm parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
        case TokKind::Int: {
            Token tok = take();
            return DiffForm::from_scalar(ScalarExpr::constant(chart_, Rational(Integer(tok.text))));
        }
        case TokKind::Diff: {
            Token tok = take();
            std::string coord = tok.text.substr(1);
            if (!chart_.has(coord))
                fail(tok, "differential does not belong to the current chart");
            return DiffForm::differential(chart_, coord);
        }
        case TokKind::Ident:
        case TokKind::Keyword: {
            if (chart_.has(t.text)) {
                Token tok = take();
                return DiffForm::from_scalar(ScalarExpr::variable(chart_, tok.text));
            }
            auto it = bindings_.find(t.text);
            if (it != bindings_.end()) {
                Token tok = take();
                (void)tok;
                return DiffForm::from_scalar(it->second);
            }
            fail(t, t.kind == TokKind::Ident ? "unknown identifier" : "unexpected keyword in expression");
        }
        case TokKind::Op:
            if (t.text == "(") {
                take();
                DiffForm inner = parse_expr();
                expect_op(")");
                return inner;
            }
            fail(t, "unexpected token in expression");
        default:
            fail(t, "unexpected end of expression");
        }
    }

    std::size_t pos_ = 0;
    std::vector<Token> tokens_;
    Chart chart_;
    std::map<std::string, ScalarExpr> bindings_;
};

// ---------------------------------------------------------------------------
// Document parsing

class DocumentParser {
public:
    explicit DocumentParser(const std::string& text) : p_(Lexer(text).run()) {}

    SystemSpec run() {
        parse_header();
        while (p_.peek().kind != TokKind::End)
            parse_section();
        finish();
        return spec_;
    }

private:
    Parser p_;
    SystemSpec spec_;
    std::set<std::string> declared_names_;
    std::map<std::string, ScalarExpr> coeff_slots_;
    std::vector<Token> check_tokens_;
    bool forms_mode_seen_ = false;
    bool equation_mode_seen_ = false;

    void parse_header() {
        Token sys = p_.peek();
        if (!(sys.kind == TokKind::Keyword && sys.text == "system"))
            p_.fail(sys, "document must start with 'system \"<name>\"'");
        p_.take();
        spec_.name = p_.expect_kind(TokKind::String, "a quoted system name").text;

        Token coords = p_.peek();
        if (!(coords.kind == TokKind::Keyword && coords.text == "coords"))
            p_.fail(coords, "expected 'coords'");
        p_.take();
        std::vector<std::string> names;
        for (int i = 0; i < 5; ++i) {
            Token t = p_.peek();
            if (t.kind != TokKind::Ident && t.kind != TokKind::Keyword)
                p_.fail(t, "expected a coordinate name");
            names.push_back(p_.take().text);
        }
        std::vector<std::string> lower = {"x", "y", "z", "p", "q"};
        std::vector<std::string> upper = {"X", "Y", "Z", "P", "Q"};
        if (names != lower && names != upper)
            p_.fail(coords, "coords must be 'x y z p q' or 'X Y Z P Q'");
        spec_.chart = Chart(names);
        p_.set_chart(spec_.chart);
    }

    void declare(const Token& where, const std::string& name) {
        if (!declared_names_.insert(name).second)
            p_.fail(where, "duplicate name '" + name + "'");
    }

    ScalarExpr parse_scalar_over(const Chart& chart, const Token& where) {
        Chart saved = spec_.chart;
        p_.set_chart(chart);
        DiffForm f = p_.parse_expr();
        p_.set_chart(saved);
        if (f.degree() != 0)
            p_.fail(where, "scalar expected");
        return f.scalar_value();
    }

    void parse_section() {
        Token t = p_.peek();
        if (t.kind != TokKind::Keyword)
            p_.fail(t, "expected a declaration keyword");
        const std::string& kw = t.text;
        if (kw == "A" || kw == "B" || kw == "C" || kw == "D" || kw == "E") {
            p_.take();
            p_.expect_op("=");
            if (coeff_slots_.count(kw))
                p_.fail(t, "coefficient " + kw + " assigned twice");
            if (spec_.chart.names()[0] != "x")
                p_.fail(t, "equation mode requires coords x y z p q");
            coeff_slots_.emplace(kw, parse_scalar_over(spec_.chart, t));
            equation_mode_seen_ = true;
        } else if (kw == "theta" || kw == "omega") {
            p_.take();
            p_.expect_op("=");
            DiffForm f = p_.parse_expr();
            unsigned want = kw == "theta" ? 1 : 2;
            if (f.degree() != want && !f.is_zero())
                p_.fail(t, kw + " must be a " + std::to_string(want) + "-form");
            if (f.is_zero() && f.degree() != want)
                f = DiffForm(spec_.chart, want);
            auto& slot = kw == "theta" ? spec_.theta : spec_.omega;
            if (slot)
                p_.fail(t, kw + " assigned twice");
            slot = std::move(f);
            forms_mode_seen_ = true;
        } else if (kw == "integral") {
            p_.take();
            Token name = p_.expect_kind(TokKind::Ident, "an integral name");
            declare(name, name.text);
            p_.expect_op("=");
            spec_.integrals.emplace_back(name.text, parse_scalar_over(spec_.chart, name));
        } else if (kw == "surface") {
            p_.take();
            Token name = p_.expect_kind(TokKind::Ident, "a surface name");
            declare(name, name.text);
            p_.expect_op(":");
            std::map<std::string, ScalarExpr> comps;
            Chart domain = surface_chart();
            for (;;) {
                Token ct = p_.peek();
                if (ct.kind != TokKind::Ident && ct.kind != TokKind::Keyword)
                    p_.fail(ct, "expected a coordinate name in surface definition");
                std::string coord = p_.take().text;
                if (!spec_.chart.has(coord))
                    p_.fail(ct, "surface assigns unknown coordinate '" + coord + "'");
                if (comps.count(coord))
                    p_.fail(ct, "surface assigns '" + coord + "' twice");
                p_.expect_op("=");
                comps.emplace(coord, parse_scalar_over(domain, ct));
                if (!p_.at_op(","))
                    break;
                p_.take();
            }
            try {
                spec_.surfaces.emplace_back(name.text, SurfaceMap(spec_.chart, std::move(comps)));
            } catch (const Error& e) {
                p_.fail(name, e.what());
            }
        } else if (kw == "normalform") {
            p_.take();
            Token name = p_.expect_kind(TokKind::Ident, "a normal form name");
            declare(name, name.text);
            p_.expect_op(":");
            std::map<std::string, ScalarExpr> slots;
            for (;;) {
                Token lt = p_.peek();
                if (lt.kind != TokKind::Ident && lt.kind != TokKind::Keyword)
                    p_.fail(lt, "expected one of X Y Z P Q F in normalform block");
                std::string label = p_.take().text;
                static const std::set<std::string> valid = {"X", "Y", "Z", "P", "Q", "F"};
                if (!valid.count(label))
                    p_.fail(lt, "expected one of X Y Z P Q F in normalform block");
                if (slots.count(label))
                    p_.fail(lt, "normalform assigns '" + label + "' twice");
                p_.expect_op("=");
                Chart over = label == "F" ? normal_form_chart() : spec_.chart;
                slots.emplace(label, parse_scalar_over(over, lt));
                if (!p_.at_op(","))
                    break;
                p_.take();
            }
            for (const auto& need : {"X", "Y", "Z", "P", "Q", "F"})
                if (!slots.count(need))
                    p_.fail(name, std::string("normalform block misses '") + need + "'");
            spec_.normal_forms.emplace_back(
                name.text, NormalFormData{slots.at("X"), slots.at("Y"), slots.at("Z"),
                                          slots.at("P"), slots.at("Q"), slots.at("F")});
        } else if (kw == "check") {
            p_.take();
            parse_check_items();
        } else {
            p_.fail(t, "unexpected keyword '" + kw + "'");
        }
    }

    void parse_check_items() {
        bool any = false;
        for (;;) {
            Token t = p_.peek();
            CheckRequest req;
            if (t.kind == TokKind::Ident && t.text == "classify") {
                p_.take();
                req.kind = CheckRequest::Kind::Classify;
            } else if (t.kind == TokKind::Ident && t.text == "characteristics") {
                p_.take();
                req.kind = CheckRequest::Kind::Characteristics;
            } else if (t.kind == TokKind::Ident && t.text == "derived-flag") {
                p_.take();
                req.kind = CheckRequest::Kind::DerivedFlag;
            } else if (t.kind == TokKind::Ident && t.text == "hypotheses") {
                p_.take();
                req.kind = CheckRequest::Kind::Hypotheses;
            } else if (t.kind == TokKind::Keyword && t.text == "integral") {
                p_.take();
                req.kind = CheckRequest::Kind::Integral;
                req.name = p_.expect_kind(TokKind::Ident, "an integral name").text;
            } else if (t.kind == TokKind::Keyword && t.text == "surface") {
                p_.take();
                req.kind = CheckRequest::Kind::Surface;
                req.name = p_.expect_kind(TokKind::Ident, "a surface name").text;
                if (p_.peek().kind == TokKind::Ident && p_.peek().text == "with") {
                    p_.take();
                    req.with_integral = p_.expect_kind(TokKind::Ident, "an integral name").text;
                }
            } else if (t.kind == TokKind::Ident && t.text == "normal-form") {
                p_.take();
                req.kind = CheckRequest::Kind::NormalForm;
                req.name = p_.expect_kind(TokKind::Ident, "a normal form name").text;
            } else {
                break;
            }
            spec_.checks.push_back(std::move(req));
            check_tokens_.push_back(t);
            any = true;
        }
        if (!any)
            p_.fail(p_.peek(), "empty check list");
    }

    void finish() {
        if (equation_mode_seen_ && forms_mode_seen_)
            p_.fail(p_.peek(), "cannot mix equation coefficients with theta/omega");
        if (!equation_mode_seen_ && !forms_mode_seen_)
            p_.fail(p_.peek(), "document declares neither equation coefficients nor theta/omega");
        spec_.equation_mode = equation_mode_seen_;
        if (equation_mode_seen_) {
            auto slot = [&](const char* k) {
                auto it = coeff_slots_.find(k);
                return it == coeff_slots_.end() ? ScalarExpr::constant(spec_.chart, 0) : it->second;
            };
            spec_.coefficients = MACoefficients{slot("A"), slot("B"), slot("C"), slot("D"), slot("E")};
        } else if (!spec_.theta || !spec_.omega) {
            p_.fail(p_.peek(), "forms mode requires both theta and omega");
        }

        auto integral_declared = [&](const std::string& n) {
            return std::any_of(spec_.integrals.begin(), spec_.integrals.end(),
                               [&](const auto& kv) { return kv.first == n; });
        };
        for (std::size_t i = 0; i < spec_.checks.size(); ++i) {
            const CheckRequest& c = spec_.checks[i];
            bool ok = true;
            switch (c.kind) {
            case CheckRequest::Kind::Integral:
                ok = integral_declared(c.name);
                break;
            case CheckRequest::Kind::Surface:
                ok = std::any_of(spec_.surfaces.begin(), spec_.surfaces.end(),
                                 [&](const auto& kv) { return kv.first == c.name; });
                if (ok && c.with_integral)
                    ok = integral_declared(*c.with_integral);
                break;
            case CheckRequest::Kind::NormalForm:
                ok = std::any_of(spec_.normal_forms.begin(), spec_.normal_forms.end(),
                                 [&](const auto& kv) { return kv.first == c.name; });
                break;
            default:
                break;
            }
            if (!ok) {
                std::string missing = c.with_integral && !integral_declared(*c.with_integral)
                                          ? *c.with_integral
                                          : c.name;
                p_.fail(check_tokens_[i], "check references undeclared name '" + missing + "'");
            }
        }
    }
};

} // namespace

SystemSpec parse_system_file(const std::string& text) {
    return DocumentParser(text).run();
}

ScalarExpr parse_scalar_text(const std::string& text, const Chart& chart,
                             const std::map<std::string, ScalarExpr>& bindings) {
    Parser p(Lexer(text).run(), chart, bindings);
    DiffForm f = p.parse_expr();
    if (p.peek().kind != TokKind::End)
        p.fail(p.peek(), "trailing input after expression");
    if (f.degree() != 0)
        p.fail(p.peek(), "scalar expected");
    return f.scalar_value();
}

DiffForm parse_form_text(const std::string& text, const Chart& chart,
                         const std::map<std::string, ScalarExpr>& bindings) {
    Parser p(Lexer(text).run(), chart, bindings);
    DiffForm f = p.parse_expr();
    if (p.peek().kind != TokKind::End)
        p.fail(p.peek(), "trailing input after expression");
    return f;
}

std::string to_string(const CheckRequest& c) {
    switch (c.kind) {
    case CheckRequest::Kind::Classify: return "classify";
    case CheckRequest::Kind::Characteristics: return "characteristics";
    case CheckRequest::Kind::DerivedFlag: return "derived-flag";
    case CheckRequest::Kind::Hypotheses: return "hypotheses";
    case CheckRequest::Kind::Integral: return "integral " + c.name;
    case CheckRequest::Kind::Surface:
        return "surface " + c.name + (c.with_integral ? " with " + *c.with_integral : "");
    case CheckRequest::Kind::NormalForm: return "normal-form " + c.name;
    }
    return "";
}

std::string render(const SystemSpec& spec) {
    std::ostringstream out;
    out << "system \"" << spec.name << "\"\n";
    out << "coords";
    for (const auto& n : spec.chart.names())
        out << " " << n;
    out << "\n";
    if (spec.equation_mode && spec.coefficients) {
        out << "A = " << to_string(spec.coefficients->A) << "\n";
        out << "B = " << to_string(spec.coefficients->B) << "\n";
        out << "C = " << to_string(spec.coefficients->C) << "\n";
        out << "D = " << to_string(spec.coefficients->D) << "\n";
        out << "E = " << to_string(spec.coefficients->E) << "\n";
    } else {
        out << "theta = " << to_string(*spec.theta) << "\n";
        out << "omega = " << to_string(*spec.omega) << "\n";
    }
    for (const auto& [name, e] : spec.integrals)
        out << "integral " << name << " = " << to_string(e) << "\n";
    for (const auto& [name, s] : spec.surfaces) {
        out << "surface " << name << ":";
        bool first = true;
        for (const auto& coord : spec.chart.names()) {
            out << (first ? " " : ", ") << coord << " = " << to_string(s.components().at(coord));
            first = false;
        }
        out << "\n";
    }
    for (const auto& [name, nf] : spec.normal_forms) {
        out << "normalform " << name << ": X = " << to_string(nf.X) << ", Y = " << to_string(nf.Y)
            << ", Z = " << to_string(nf.Z) << ", P = " << to_string(nf.P)
            << ", Q = " << to_string(nf.Q) << ", F = " << to_string(nf.F) << "\n";
    }
    if (!spec.checks.empty()) {
        out << "check";
        for (const auto& c : spec.checks)
            out << " " << to_string(c);
        out << "\n";
    }
    return out.str();
}

} // namespace mag
