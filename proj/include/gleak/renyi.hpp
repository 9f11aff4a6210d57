#pragma once

#include "gleak/prob.hpp"

namespace gleak {

// Order of a Renyi information measure: a positive real other than 1, or the
// continuous-extension markers ONE and INFINITY.
class Order {
public:
    static Order one() { return Order(Kind::One, 1.0); }
    static Order infinity() { return Order(Kind::Infinity, 0.0); }
    static Order alpha(double a); // a > 0, a != 1

    // Picks the marker when a == 1.
    static Order of(double a);

    bool is_one() const { return kind_ == Kind::One; }
    bool is_infinity() const { return kind_ == Kind::Infinity; }
    bool is_finite() const { return kind_ == Kind::Alpha; }
    double alpha_value() const; // only for finite orders
    std::string str() const;

private:
    enum class Kind { Alpha, One, Infinity };
    Order(Kind k, double a) : kind_(k), alpha_(a) {}
    Kind kind_;
    double alpha_;
};

// Renyi divergence D_a(P||Q) in nats. Conventions: terms with P(x)=0
// contribute nothing at every order; 0^(1-a) = 0 for a < 1; the value is
// +inf whenever Q lacks mass on the support of P at orders >= 1, or the
// order-a sum vanishes.
ExtendedReal renyi_divergence(const Distribution& p, const Distribution& q, Order a);

// Renyi entropy H_a(P) in nats; Shannon entropy at ONE, min-entropy at
// INFINITY. Always finite for a valid distribution.
double renyi_entropy(const Distribution& p, Order a);

// Arimoto conditional entropy H_a(X|Y) of a joint source; sums only over
// positive-mass y.
double arimoto_cond_entropy(const JointSource& j, Order a);

// Arimoto mutual information I_a(X;Y) = H_a(X) - H_a(X|Y).
double arimoto_mi(const JointSource& j, Order a);

} // namespace gleak
