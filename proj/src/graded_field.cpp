#include "xprod/graded_field.hpp"

#include <set>

namespace xprod {

namespace {

Q floor_q(const Q& q) {
    Z f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Q(f);
}

std::vector<TowerStep> steps_of(const FieldTower& t) {
    std::vector<TowerStep> out;
    for (std::size_t i = 0; i < t.level_count(); ++i) out.push_back(t.step(i));
    return out;
}

FieldElement reembed(const FieldElement& a, const TowerPtr& tower) {
    return FieldElement(tower, a.coeffs());
}

}  // namespace

GradedFieldPtr GradedField::laurent(TowerPtr residue, std::size_t rank) {
    auto f = std::shared_ptr<GradedField>(
        new GradedField(residue, rank, GradeSubgroup::integer_lattice(rank)));
    f->base_residue_degree_ = residue->degree();
    auto zero = GradeVector::zero(rank);
    f->reps_ = {zero};
    f->phi_.emplace(std::make_pair(zero, zero), FieldElement::rational(residue, 1));
    return f;
}

GradeVector GradedField::representative(const GradeVector& g) const {
    if (g.rank() != rank_) throw PreconditionError("degree of wrong rank");
    GradeVector r = g;
    for (auto& x : r.coords) x -= floor_q(x);
    return r;
}

FieldElement GradedField::factor(const GradeVector& a, const GradeVector& b) const {
    auto it = phi_.find({representative(a), representative(b)});
    if (it == phi_.end())
        throw PreconditionError("degree outside the grade group: " + a.str() + " or " + b.str());
    return it->second;
}

std::vector<std::string> GradedField::check_factor_set() const {
    std::vector<std::string> bad;
    auto zero = GradeVector::zero(rank_);
    for (const auto& a : reps_) {
        if (!factor(zero, a).is_one()) bad.push_back("phi-normalized(" + a.str() + ")");
        for (const auto& b : reps_) {
            if (!(factor(a, b) == factor(b, a)))
                bad.push_back("phi-symmetric(" + a.str() + "," + b.str() + ")");
            for (const auto& c : reps_) {
                auto lhs = factor(a, b) * factor(a + b, c);
                auto rhs = factor(b, c) * factor(a, b + c);
                if (!(lhs == rhs))
                    bad.push_back("phi-cocycle(" + a.str() + "," + b.str() + "," + c.str() + ")");
            }
        }
    }
    return bad;
}

GradedFieldPtr extend_inertial(const GradedField& base, const TowerStep& step) {
    auto steps = steps_of(*base.residue_);
    steps.push_back(step);
    auto tower = FieldTower::make(std::move(steps));
    auto f = std::shared_ptr<GradedField>(new GradedField(tower, base.rank_, base.grades_));
    f->base_residue_degree_ = base.base_residue_degree_;
    f->reps_ = base.reps_;
    for (const auto& [k, v] : base.phi_) f->phi_.emplace(k, reembed(v, tower));
    for (auto rs : base.ramified_) {
        rs.beta = reembed(rs.beta, tower);
        f->ramified_.push_back(std::move(rs));
    }
    return f;
}

GradedFieldPtr extend_totally_ramified(const GradedField& base, int r, const FieldElement& beta,
                                       const GradeVector& mu) {
    if (r < 1) throw PreconditionError("ramification index must be positive");
    if (beta.tower() != base.residue_ || beta.is_zero())
        throw PreconditionError("z^r = b needs a nonzero residue coefficient from the base field");
    if (!base.grades_.contains(mu)) throw PreconditionError("deg(b) is not in the base grade group");
    GradeVector delta = Q(1, r) * mu;
    long bound = std::max<long>(base.grades_.denominator_bound(),
                                static_cast<long>(base.grades_.denominator().get_si()) * r);
    GradeSubgroup wide(base.rank_, base.grades_.generators(), bound);
    long order = coset_order(delta, wide);
    if (order != r)
        throw PreconditionError("order condition fails: deg(b)/" + std::to_string(r) + " has order " +
                                std::to_string(order) + " modulo the base grade group, so the "
                                "extension is not totally ramified");
    auto f = std::shared_ptr<GradedField>(
        new GradedField(base.residue_, base.rank_, wide.plus(std::vector<GradeVector>{delta})));
    f->base_residue_degree_ = base.base_residue_degree_;
    f->ramified_ = base.ramified_;
    f->ramified_.push_back({r, beta, mu, delta});
    // rep -> (k, gamma) with rep = k delta + gamma, gamma in the base grade group
    std::map<GradeVector, std::pair<int, GradeVector>> split;
    for (int k = 0; k < r; ++k)
        for (const auto& rho : base.reps_) {
            GradeVector g = Q(k) * delta + rho;
            GradeVector rep = f->representative(g);
            split.emplace(rep, std::make_pair(k, rep - Q(k) * delta));
        }
    if (split.size() != base.reps_.size() * static_cast<std::size_t>(r))
        throw InternalError("coset representatives collided in a ramified extension");
    for (const auto& [rep, kg] : split) f->reps_.push_back(rep);
    for (const auto& [r1, s1] : split)
        for (const auto& [r2, s2] : split) {
            const auto& [k1, g1] = s1;
            const auto& [k2, g2] = s2;
            FieldElement phi = base.factor(g1, g2);
            if (k1 + k2 >= r) phi *= beta * base.factor(mu, g1 + g2);
            f->phi_.emplace(std::make_pair(r1, r2), phi);
        }
    return f;
}

// ------------------------------------------------------------ GradedElement

GradedElement GradedElement::homogeneous(GradedFieldPtr field, const FieldElement& c,
                                         const GradeVector& deg) {
    GradedElement e(std::move(field));
    e.add_term(deg, c);
    return e;
}

void GradedElement::add_term(const GradeVector& deg, const FieldElement& c) {
    if (c.tower() != field_->residue()) throw PreconditionError("coefficient from another residue field");
    if (!field_->grades().contains(deg)) throw PreconditionError("degree " + deg.str() + " not in the grade group");
    if (c.is_zero()) return;
    auto it = comps_.find(deg);
    if (it == comps_.end()) {
        comps_.emplace(deg, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) comps_.erase(it);
}

const GradeVector& GradedElement::degree() const {
    if (!is_homogeneous()) throw PreconditionError("degree of a non-homogeneous element");
    return comps_.begin()->first;
}

FieldElement GradedElement::component(const GradeVector& deg) const {
    auto it = comps_.find(deg);
    if (it == comps_.end()) return FieldElement(field_->residue());
    return it->second;
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
    if (o.field_ != field_) throw PreconditionError("graded elements of different fields");
    for (const auto& [d, c] : o.comps_) add_term(d, c);
    return *this;
}

GradedElement GradedElement::operator-() const {
    GradedElement r = *this;
    for (auto& [d, c] : r.comps_) c = -c;
    return r;
}

GradedElement operator*(const GradedElement& a, const GradedElement& b) {
    if (a.field_ != b.field_) throw PreconditionError("graded elements of different fields");
    GradedElement out(a.field_);
    for (const auto& [da, ca] : a.comps_)
        for (const auto& [db, cb] : b.comps_) out.add_term(da + db, ca * cb * a.field_->factor(da, db));
    return out;
}

bool GradedElement::operator==(const GradedElement& o) const {
    return field_ == o.field_ && comps_ == o.comps_;
}

GradedElement GradedElement::inverse() const {
    if (!is_homogeneous()) throw ArithmeticError("only nonzero homogeneous elements are invertible here");
    const auto& [d, c] = *comps_.begin();
    FieldElement inv = (c * field_->factor(d, -d)).inverse();
    return homogeneous(field_, inv, -d);
}

std::string GradedElement::str() const {
    if (comps_.empty()) return "0";
    std::string out;
    for (const auto& [d, c] : comps_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*t" + d.str();
    }
    return out;
}

// --------------------------------------------------------------- structure

bool fundamental_equality_check(const GradedDimensions& dims) {
    try {
        auto q = quotient(dims.grades, dims.base_grades);
        return dims.total_degree == dims.residue_degree * q.group.order();
    } catch (const PreconditionError&) {
        return false;
    }
}

long long relative_degree(const GradedField& ext, const GradedField& base) {
    if (ext.residue()->degree() % base.residue()->degree() != 0)
        throw PreconditionError("residue field of the extension does not contain the base residue field");
    long long residue = static_cast<long long>(ext.residue()->degree() / base.residue()->degree());
    return residue * quotient(ext.grades(), base.grades()).group.order();
}

bool graded_division_check(const TowerPtr& base, const std::vector<TowerStep>& steps) {
    std::vector<TowerStep> current = steps_of(*base);
    for (const auto& st : steps) {
        if (st.degree > 4)
            throw PreconditionError("residue algebra step '" + st.name +
                                    "' has degree above 4; zero-divisor decision not implemented");
        auto tower = FieldTower::make(current);
        const std::size_t level = tower->level_count();
        std::vector<QVec> monic;
        for (auto c : st.coefficients) {
            c.resize(tower->degree());
            monic.push_back(std::move(c));
        }
        if (monic.size() != static_cast<std::size_t>(st.degree) + 1)
            throw PreconditionError("step '" + st.name + "' has the wrong number of coefficients");
        auto irreducible = decide_irreducible(*tower, level, monic);
        if (!irreducible)
            throw PreconditionError("irreducibility of step '" + st.name + "' is undecided");
        if (!*irreducible) return false;
        current.push_back(st);
    }
    return true;
}

}  // namespace xprod
