#pragma once

#include <string>

#include "reladp/reladp.hpp"

namespace fixtures {

inline const char* kDivLRules = R"(
  minus(x,O) -> x
  minus(s(x),s(y)) -> minus(x,y)
  div(x,s(O)) -> x
  div(s(x),s(y)) -> s(div(minus(x,y),s(y)))
  divL(x,nil) -> x
  divL(x,cons(y,xs)) -> divL(div(x,y),xs)
)";

inline std::string divl() { return std::string("(VAR x y xs)(RULES") + kDivLRules + ")"; }
inline std::string divl_mset() {
    return std::string("(VAR x y xs zs)(RULES") + kDivLRules + "  cons(x,cons(y,zs)) ->= cons(y,cons(x,zs)))";
}
inline std::string divl_mset2() {
    return std::string("(VAR x y z xs zs)(RULES") + kDivLRules +
           "  divL(z,cons(x,cons(y,zs))) ->= divL(z,cons(y,cons(x,zs))))";
}
inline const char* kR1 = "(VAR x)(RULES a -> b  f(x) ->= d(f(x),x))";
inline const char* kR2 = "(RULES a -> b  f ->= d(f,a))";
inline const char* kR3 = "(VAR x)(RULES a(x) -> b(x)  f ->= a(f))";
inline const char* kR4 = "(RULES a -> b  b ->= a)";
inline const char* kCreatingTerminating = "(VAR y)(RULES a -> b  f(s(y)) ->= d(f(y),a))";

inline reladp::RelativeTrs parse(const std::string& s) { return reladp::parse_relative_trs(s); }

/// Term syntax with x, y, z, w, xs, ys, zs as variables.
inline reladp::Term term(const std::string& s) {
    auto trs = reladp::parse_relative_trs("(VAR x y z w xs ys zs)(RULES dummy__(" + s + ") -> dummy__(" + s + "))");
    return trs.main.at(0).lhs.arg(0);
}

inline reladp::Position pos(std::initializer_list<std::uint32_t> p) { return reladp::Position{std::vector<std::uint32_t>(p)}; }

}  // namespace fixtures
