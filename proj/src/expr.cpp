#include "diffquat/expr.hpp"

#include <cctype>

namespace diffquat {

namespace {

struct Token {
    enum class Kind { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    std::string text;
    std::size_t offset;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::size_t start = pos_;
        if (pos_ >= s_.size()) {
            tok_ = {Token::Kind::End, "", start};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            tok_ = {Token::Kind::Int, s_.substr(start, pos_ - start), start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Kind::Ident, s_.substr(start, pos_ - start), start};
            return;
        }
        ++pos_;
        switch (c) {
            case '+': tok_ = {Token::Kind::Plus, "+", start}; return;
            case '-': tok_ = {Token::Kind::Minus, "-", start}; return;
            case '*': tok_ = {Token::Kind::Star, "*", start}; return;
            case '/': tok_ = {Token::Kind::Slash, "/", start}; return;
            case '^': tok_ = {Token::Kind::Caret, "^", start}; return;
            case '(': tok_ = {Token::Kind::LParen, "(", start}; return;
            case ')': tok_ = {Token::Kind::RParen, ")", start}; return;
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    Token tok_{Token::Kind::End, "", 0};
};

class Parser {
  public:
    explicit Parser(const std::string& s) : lex_(s) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        if (lex_.peek().kind != Token::Kind::End)
            throw ParseError("trailing input", lex_.peek().offset);
        return e;
    }

  private:
    static ExprPtr node(Expr e) { return std::make_shared<Expr>(std::move(e)); }

    ExprPtr expr() {
        ExprPtr left = term();
        while (lex_.peek().kind == Token::Kind::Plus || lex_.peek().kind == Token::Kind::Minus) {
            bool plus = lex_.take().kind == Token::Kind::Plus;
            ExprPtr right = term();
            Expr e;
            e.kind = plus ? Expr::Kind::Add : Expr::Kind::Sub;
            e.lhs = left;
            e.rhs = right;
            left = node(std::move(e));
        }
        return left;
    }

    ExprPtr term() {
        ExprPtr left = factor();
        while (lex_.peek().kind == Token::Kind::Star || lex_.peek().kind == Token::Kind::Slash) {
            bool mul = lex_.take().kind == Token::Kind::Star;
            ExprPtr right = factor();
            Expr e;
            e.kind = mul ? Expr::Kind::Mul : Expr::Kind::Div;
            e.lhs = left;
            e.rhs = right;
            left = node(std::move(e));
        }
        return left;
    }

    ExprPtr factor() {
        ExprPtr b = base();
        if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.take();
            bool negative = false;
            if (lex_.peek().kind == Token::Kind::Minus) {
                lex_.take();
                negative = true;
            }
            Token t = lex_.take();
            if (t.kind != Token::Kind::Int)
                throw ParseError("expected an integer exponent", t.offset);
            long e = std::stol(t.text);
            Expr p;
            p.kind = Expr::Kind::Pow;
            p.lhs = b;
            p.exponent = static_cast<int>(negative ? -e : e);
            return node(std::move(p));
        }
        return b;
    }

    ExprPtr base() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Kind::Int: {
                Expr e;
                e.kind = Expr::Kind::Number;
                e.number = Rat(mpz_class(t.text), mpz_class(1));
                return node(std::move(e));
            }
            case Token::Kind::Ident: {
                Expr e;
                e.kind = Expr::Kind::Var;
                e.name = t.text;
                return node(std::move(e));
            }
            case Token::Kind::LParen: {
                ExprPtr inner = expr();
                Token close = lex_.take();
                if (close.kind != Token::Kind::RParen)
                    throw ParseError("expected ')'", close.offset);
                return inner;
            }
            case Token::Kind::Minus: {
                Expr e;
                e.kind = Expr::Kind::Neg;
                e.lhs = factor();
                return node(std::move(e));
            }
            default:
                throw ParseError("expected a value", t.offset);
        }
    }

    Lexer lex_;
};

} // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).parse(); }

RatFunc eval_ratfunc(const ExprPtr& e, const std::string& var) {
    switch (e->kind) {
        case Expr::Kind::Number: return RatFunc(e->number);
        case Expr::Kind::Var:
            if (e->name != var) throw MathError("unknown symbol in expression: " + e->name);
            return RatFunc::t();
        case Expr::Kind::Neg: return -eval_ratfunc(e->lhs, var);
        case Expr::Kind::Add: return eval_ratfunc(e->lhs, var) + eval_ratfunc(e->rhs, var);
        case Expr::Kind::Sub: return eval_ratfunc(e->lhs, var) - eval_ratfunc(e->rhs, var);
        case Expr::Kind::Mul: return eval_ratfunc(e->lhs, var) * eval_ratfunc(e->rhs, var);
        case Expr::Kind::Div: {
            RatFunc den = eval_ratfunc(e->rhs, var);
            if (den.is_zero()) throw MathError("division by the zero expression");
            return eval_ratfunc(e->lhs, var) / den;
        }
        case Expr::Kind::Pow: return eval_ratfunc(e->lhs, var).pow(e->exponent);
    }
    throw MathError("unreachable expression kind");
}

RatFunc parse_ratfunc(const std::string& text, const std::string& var) {
    return eval_ratfunc(parse_expression(text), var);
}

TowerElem eval_tower_elem(const ExprPtr& e, const TowerPtr& tower) {
    switch (e->kind) {
        case Expr::Kind::Number: return TowerElem::from_rat(tower, e->number);
        case Expr::Kind::Var: {
            if (e->name == tower->base().var)
                return TowerElem::from_ratfunc(tower, RatFunc::t());
            for (int i = 0; i < tower->height(); ++i)
                if (tower->step(i).name == e->name) return TowerElem::generator(tower, i);
            throw MathError("unknown symbol in expression: " + e->name);
        }
        case Expr::Kind::Neg: return -eval_tower_elem(e->lhs, tower);
        case Expr::Kind::Add: return eval_tower_elem(e->lhs, tower) + eval_tower_elem(e->rhs, tower);
        case Expr::Kind::Sub: return eval_tower_elem(e->lhs, tower) - eval_tower_elem(e->rhs, tower);
        case Expr::Kind::Mul: return eval_tower_elem(e->lhs, tower) * eval_tower_elem(e->rhs, tower);
        case Expr::Kind::Div: {
            TowerElem den = eval_tower_elem(e->rhs, tower);
            if (den.is_zero()) throw MathError("division by the zero expression");
            return eval_tower_elem(e->lhs, tower) / den;
        }
        case Expr::Kind::Pow: return eval_tower_elem(e->lhs, tower).pow(e->exponent);
    }
    throw MathError("unreachable expression kind");
}

TowerElem parse_tower_elem(const std::string& text, const TowerPtr& tower) {
    return eval_tower_elem(parse_expression(text), tower);
}

} // namespace diffquat
