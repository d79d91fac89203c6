#include <iostream>

#include "ebs/edp.hpp"
#include "ebs/parser.hpp"

int main() {
    ebs::Problem p = ebs::parse_problem("vocab P/2; forall x. exists y. P(x,y);");
    ebs::Classification c = ebs::classify(ebs::to_pcnf(*p.formula), p.vocabulary);
    std::cout << ebs::edp_bound(c).bound << "\n";
    return ebs::edp_bound(c).bound == 2 ? 0 : 1;
}
