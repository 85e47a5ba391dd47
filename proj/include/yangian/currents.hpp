#pragma once

#include <string>
#include <vector>

#include "yangian/boson.hpp"

namespace yangian {

// Reading of the ambiguous b^{i+1,l} summands in E^-_i, plus whether the
// m >= i+2 summands carry exp(a^i_+(u)) in their tail.
struct EMinusReading {
    Sign first_sum = Sign::Minus;    // hatted part in the m < i sum
    Sign middle_term = Sign::Plus;   // b^{i+1,l} inside the standalone a^i_+ term
    bool tail_a_plus = true;

    static EMinusReading corrected() { return {}; }
    static EMinusReading printed() { return {Sign::Minus, Sign::Minus, false}; }
    // "printed", "corrected", or "first=+|-,middle=+|-,tail-a=on|off"
    static EMinusReading parse(const std::string& text);
    std::string str() const;
    friend bool operator==(const EMinusReading&, const EMinusReading&) = default;
};

struct CurrentOptions {
    AVariant variant = AVariant::Standard;
    EMinusReading reading = EMinusReading::corrected();
};

enum class CurrentKind { HPlus, HMinus, EPlus, EMinus };
std::string current_name(CurrentKind kind, int i);

CurrentExpr build_H(int i, Sign sign, const AlgebraData& d, const CurrentOptions& opt = {});
CurrentExpr build_Eplus(int i, const AlgebraData& d);
CurrentExpr build_Eminus(int i, const AlgebraData& d, const CurrentOptions& opt = {});
CurrentExpr build_current(CurrentKind kind, int i, const AlgebraData& d, const CurrentOptions& opt = {});

// Net e^{q} content of a term: boson -> sum of minus-part coefficients.
std::map<BosonSymbol, RatFunc> momentum_shift(const VertexTerm& t);

// The sl_2 currents written out by hand, independently of the builders.
CurrentExpr transcribed_N2(CurrentKind kind);

struct ReductionReport {
    CurrentKind kind;
    bool pass = false;
    std::string diff;
};
ReductionReport reduce_to_N2(CurrentKind kind);

// One atom per line: "term <n> <prefactor>" headers, then "<symbol> <part> <shift> <coefficient>".
std::string dump(const CurrentExpr& e);

}  // namespace yangian
