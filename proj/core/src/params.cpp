#include "wns/params.hpp"

namespace wns {

std::vector<LedgerLine> validate_params(const ParamSet& p, const EnergyProfile* profile) {
    std::vector<LedgerLine> out;
    auto leq = [&](const std::string& name, double lhs, double rhs) {
        out.push_back({name, lhs <= rhs, lhs, rhs});
    };
    auto is_int_multiple = [&](const std::string& name, double val, double of) {
        const double q = val / of;
        const bool ok = std::abs(q - std::round(q)) < 1e-9 && q >= 1.0 - 1e-9;
        out.push_back({name, ok, val, of});
    };

    const double lna = p.ln_a(), b = p.b, al = p.alpha, be = p.beta;

    // prescribed-energy iteration
    leq("alpha > 18 beta b^2", 18.0 * be * b * b, al);
    leq("1/7 - 50 alpha > 2 beta b^2", 2.0 * be * b * b, 1.0 / 7.0 - 50.0 * al);
    leq("1/7 - 160 alpha > 2 beta b", 2.0 * be * b, 1.0 / 7.0 - 160.0 * al);
    is_int_multiple("b in 56 N", b, 56.0);
    is_int_multiple("alpha b in 8 N", al * b, 8.0);
    leq("a^{beta b} >= 2", std::log(2.0), be * b * lna);
    if (profile) {
        leq("4 <= e_min", 4.0, profile->e_inf());
        leq("e_min <= e_max", profile->e_inf(), profile->e_sup());
        leq("e_max <= a^{(3/2) b alpha + 2}", std::log(profile->e_sup()),
            (1.5 * b * al + 2.0) * lna);
        // 10 M0 e_max <= lambda_1^{(11/12)(alpha/8) - 2 b^2 beta}
        const double expo = (11.0 / 12.0) * (al / 8.0) - 2.0 * b * b * be;
        leq("10 M0 e_max <= lambda_1^{(11/96) alpha - 2 b^2 beta}",
            std::log(10.0 * p.m0 * profile->e_sup()), expo * p.log_lambda(1));
    }

    // prescribed-datum iteration
    leq("b (3 alpha - 4 beta) > 12", 12.0, b * (3.0 * al - 4.0 * be));
    leq("3 alpha > 16 beta b", 16.0 * be * b, 3.0 * al);
    leq("alpha > 18 beta b", 18.0 * be * b, al);
    leq("161 alpha < 1/7", 161.0 * al, 1.0 / 7.0);
    return out;
}

bool all_pass(const std::vector<LedgerLine>& lines) {
    for (const auto& l : lines)
        if (!l.pass) return false;
    return true;
}

}  // namespace wns
