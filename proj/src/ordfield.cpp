#include "rplace/ordfield.hpp"

#include <algorithm>
#include <stdexcept>

namespace rplace {

// ---------------------------------------------------------------------------
// HahnSum

HahnSum HahnSum::monomial(GroupElem exp, Quad coeff) {
  HahnSum s;
  if (!coeff.is_zero()) s.terms_.push_back({std::move(exp), std::move(coeff)});
  return s;
}

HahnSum HahnSum::constant(const ValueGroup& G, Quad c) { return monomial(G.zero(), std::move(c)); }

HahnSum HahnSum::from_terms(const ValueGroup& G, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [&G](const Term& a, const Term& b) { return G.less(a.exp, b.exp); });
  HahnSum s;
  for (auto& t : terms) {
    if (!s.terms_.empty() && s.terms_.back().exp == t.exp) {
      s.terms_.back().coeff += t.coeff;
      if (s.terms_.back().coeff.is_zero()) s.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      s.terms_.push_back(std::move(t));
    }
  }
  return s;
}

HahnSum HahnSum::add(const ValueGroup& G, const HahnSum& a, const HahnSum& b) {
  HahnSum s;
  s.terms_.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      s.terms_.push_back(a.terms_[i++]);
      continue;
    }
    if (i == a.size()) {
      s.terms_.push_back(b.terms_[j++]);
      continue;
    }
    const Ordering o = G.cmp(a.terms_[i].exp, b.terms_[j].exp);
    if (o == Ordering::Less) {
      s.terms_.push_back(a.terms_[i++]);
    } else if (o == Ordering::Greater) {
      s.terms_.push_back(b.terms_[j++]);
    } else {
      Quad c = a.terms_[i].coeff + b.terms_[j].coeff;
      if (!c.is_zero()) s.terms_.push_back({a.terms_[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  return s;
}

HahnSum HahnSum::mul(const ValueGroup& G, const HahnSum& a, const HahnSum& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) return b.scaled(a.terms_[0].exp, a.terms_[0].coeff);
  if (b.size() == 1) return a.scaled(b.terms_[0].exp, b.terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(a.size() * b.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) prod.push_back({x.exp + y.exp, x.coeff * y.coeff});
  }
  return from_terms(G, std::move(prod));
}

HahnSum HahnSum::negated() const {
  HahnSum s = *this;
  for (auto& t : s.terms_) t.coeff = -t.coeff;
  return s;
}

HahnSum HahnSum::scaled(const GroupElem& shift, const Quad& c) const {
  if (c.is_zero()) return {};
  HahnSum s = *this;
  for (auto& t : s.terms_) {
    t.exp += shift;
    t.coeff *= c;
  }
  return s;
}

std::string monomial_text(const ValueGroup& G, const GroupElem& exp) {
  if (G.dim() == 1) return "t^(" + to_string(exp.coords[0]) + ")";
  return "t^(" + exp.str() + ")";
}

std::string HahnSum::str(const ValueGroup& G) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    std::string piece;
    if (t.exp.is_zero()) {
      piece = t.coeff.str();
    } else if (t.coeff == Quad(1)) {
      piece = monomial_text(G, t.exp);
    } else if (t.coeff == Quad(-1)) {
      piece = "-" + monomial_text(G, t.exp);
    } else if (t.coeff.is_rational()) {
      piece = t.coeff.str() + "*" + monomial_text(G, t.exp);
    } else {
      piece = "(" + t.coeff.str() + ")*" + monomial_text(G, t.exp);
    }
    if (i > 0 && piece.front() != '-') s += "+";
    s += piece;
  }
  return s;
}

// ---------------------------------------------------------------------------
// HahnField

FieldPtr HahnField::make(std::int64_t coeff_d, ValueGroup group, std::string name) {
  if (coeff_d != 1 && !is_squarefree(coeff_d)) {
    throw std::invalid_argument("coefficient field radicand must be squarefree");
  }
  auto F = std::make_shared<HahnField>();
  F->coeff_d_ = coeff_d;
  F->group_ = std::move(group);
  F->name_ = std::move(name);
  return F;
}

bool HahnField::admits(const Quad& c) const { return c.is_rational() || c.radicand() == coeff_d_; }

std::string HahnField::str() const {
  const std::string k = coeff_d_ == 1 ? "Q" : "Q(sqrt(" + std::to_string(coeff_d_) + "))";
  return "hahn(" + k + "; " + group_.str() + ")";
}

std::optional<std::vector<std::size_t>> HahnField::coord_map_from(const HahnField* ancestor) const {
  std::vector<std::size_t> map(group_.dim());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  const HahnField* cur = this;
  while (cur != ancestor) {
    if (!cur->parent_) return std::nullopt;
    // Compose: ancestor-side coordinates map through parent_map_ first.
    std::vector<std::size_t> composed(cur->parent_->group_.dim());
    for (std::size_t i = 0; i < composed.size(); ++i) composed[i] = map[cur->parent_map_[i]];
    map = std::move(composed);
    cur = cur->parent_.get();
  }
  return map;
}

GroupElem lift_exponent(const GroupElem& g, const std::vector<std::size_t>& coord_map, std::size_t dim) {
  GroupElem r(dim);
  for (std::size_t i = 0; i < g.dim(); ++i) r.coords[coord_map[i]] = g.coords[i];
  return r;
}

// ---------------------------------------------------------------------------
// FieldElement

namespace {

// Exact quotient of num by den (den has leading term 1), if it exists and is
// found within the step bound. In the group ring the quotient's exponents
// lie coordinatewise between min(num) - min(den) and max(num) - max(den),
// which stops failed divisions early whatever the order.
void coord_range(const HahnSum& s, std::vector<Rational>& lo, std::vector<Rational>& hi) {
  const std::size_t n = s.leading().exp.dim();
  lo.assign(s.leading().exp.coords.begin(), s.leading().exp.coords.end());
  hi = lo;
  for (const auto& t : s.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (t.exp.coords[i] < lo[i]) lo[i] = t.exp.coords[i];
      if (t.exp.coords[i] > hi[i]) hi[i] = t.exp.coords[i];
    }
  }
}

std::optional<HahnSum> exact_quotient(const ValueGroup& G, const HahnSum& num, const HahnSum& den) {
  std::vector<Rational> nlo, nhi, dlo, dhi;
  coord_range(num, nlo, nhi);
  coord_range(den, dlo, dhi);
  const std::size_t n = nlo.size();
  for (std::size_t i = 0; i < n; ++i) {
    nlo[i] -= dlo[i];
    nhi[i] -= dhi[i];
    if (nlo[i] > nhi[i]) return std::nullopt;
  }
  std::vector<Term> q;
  HahnSum r = num;
  const std::size_t max_steps = 256 + 4 * num.size();
  for (std::size_t step = 0; !r.is_zero(); ++step) {
    if (step > max_steps) return std::nullopt;
    const Term lead = r.leading();
    for (std::size_t i = 0; i < n; ++i) {
      if (lead.exp.coords[i] < nlo[i] || lead.exp.coords[i] > nhi[i]) return std::nullopt;
    }
    q.push_back(lead);
    r = HahnSum::add(G, r, den.scaled(lead.exp, -lead.coeff));
  }
  return HahnSum::from_terms(G, std::move(q));
}

}  // namespace

FieldElement::FieldElement(FieldPtr F, Quad c) : field_(std::move(F)) {
  if (!field_) throw std::invalid_argument("null field");
  if (!field_->admits(c)) throw std::domain_error("coefficient " + c.str() + " not in " + field_->str());
  num_ = HahnSum::constant(group(), std::move(c));
  den_ = HahnSum::constant(group(), Quad(1));
}

FieldElement::FieldElement(FieldPtr F, HahnSum num, HahnSum den)
    : field_(std::move(F)), num_(std::move(num)), den_(std::move(den)) {
  if (!field_) throw std::invalid_argument("null field");
  if (den_.is_zero()) {
    if (den_.terms().empty() && num_.terms().empty()) {
      den_ = HahnSum::constant(group(), Quad(1));
    } else {
      den_ = HahnSum::constant(group(), Quad(1));
    }
  }
  for (const auto* s : {&num_, &den_}) {
    for (const auto& t : s->terms()) {
      if (t.exp.dim() != group().dim()) throw std::invalid_argument("exponent dimension mismatch");
      if (!field_->admits(t.coeff)) {
        throw std::domain_error("coefficient " + t.coeff.str() + " not in " + field_->str());
      }
    }
  }
  normalize();
}

FieldElement FieldElement::monomial(FieldPtr F, GroupElem exp, Quad coeff) {
  return FieldElement(std::move(F), HahnSum::monomial(std::move(exp), std::move(coeff)));
}

void FieldElement::normalize() {
  const ValueGroup& G = group();
  if (num_.is_zero()) {
    den_ = HahnSum::constant(G, Quad(1));
    return;
  }
  const Term lead = den_.leading();
  const Quad inv = lead.coeff.inverse();
  const GroupElem shift = -lead.exp;
  num_ = num_.scaled(shift, inv);
  den_ = den_.scaled(shift, inv);
  if (den_.size() > 1) {
    if (auto q = exact_quotient(G, num_, den_)) {
      num_ = std::move(*q);
      den_ = HahnSum::constant(G, Quad(1));
    }
  }
}

void FieldElement::require_same_field(const FieldElement& o) const {
  if (field_ != o.field_) {
    throw std::invalid_argument("elements of different fields: " + (field_ ? field_->str() : "?") +
                                " vs " + (o.field_ ? o.field_->str() : "?"));
  }
}

int FieldElement::sign() const {
  if (num_.is_zero()) return 0;
  return num_.leading().coeff.sign();
}

std::optional<GroupElem> FieldElement::valuation() const {
  if (num_.is_zero()) return std::nullopt;
  return num_.leading().exp;
}

Quad FieldElement::leading_coeff() const {
  if (num_.is_zero()) return Quad(0);
  return num_.leading().coeff;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.num_ = r.num_.negated();
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  require_same_field(o);
  const ValueGroup& G = group();
  if (den_ == o.den_) {
    num_ = HahnSum::add(G, num_, o.num_);
  } else {
    num_ = HahnSum::add(G, HahnSum::mul(G, num_, o.den_), HahnSum::mul(G, o.num_, den_));
    den_ = HahnSum::mul(G, den_, o.den_);
  }
  normalize();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  require_same_field(o);
  const ValueGroup& G = group();
  num_ = HahnSum::mul(G, num_, o.num_);
  den_ = HahnSum::mul(G, den_, o.den_);
  normalize();
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  FieldElement r = *this;
  std::swap(r.num_, r.den_);
  r.normalize();
  return r;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  require_same_field(o);
  return *this *= o.inverse();
}

FieldElement FieldElement::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  FieldElement result(field_, Quad(1));
  FieldElement base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.field_ != b.field_) return false;
  if (a.den_ == b.den_) return a.num_ == b.num_;
  const ValueGroup& G = a.group();
  return HahnSum::mul(G, a.num_, b.den_) == HahnSum::mul(G, b.num_, a.den_);
}

std::string FieldElement::str() const {
  const ValueGroup& G = group();
  if (den_.size() == 1) return num_.str(G);
  return "(" + num_.str(G) + ")/(" + den_.str(G) + ")";
}

Ordering cmp_field(const FieldElement& x, const FieldElement& y) {
  return to_ordering((x - y).sign());
}

std::optional<GroupElem> valuation(const FieldElement& x) { return x.valuation(); }

// ---------------------------------------------------------------------------
// Expansion

ExpansionStream::ExpansionStream(const FieldElement& x) : x_(x), rest_(x.num()) {}

std::optional<Term> ExpansionStream::next() {
  if (rest_.is_zero()) return std::nullopt;
  const ValueGroup& G = x_.group();
  Term lead = rest_.leading();
  rest_ = HahnSum::add(G, rest_, x_.den().scaled(lead.exp, -lead.coeff));
  return lead;
}

FieldElement ExpansionStream::remainder() const { return FieldElement(x_.field(), rest_, x_.den()); }

Expansion expand(const FieldElement& x, const GroupElem& cutoff, std::size_t max_steps) {
  const ValueGroup& G = x.group();
  Expansion e;
  std::vector<Term> out;
  HahnSum rest = x.num();
  for (std::size_t step = 0;; ++step) {
    if (rest.is_zero()) break;
    const Term lead = rest.leading();
    if (G.cmp(lead.exp, cutoff) == Ordering::Greater) {
      e.tail = true;
      break;
    }
    if (step == max_steps) {
      e.tail = true;
      e.exhausted = true;
      break;
    }
    out.push_back(lead);
    rest = HahnSum::add(G, rest, x.den().scaled(lead.exp, -lead.coeff));
  }
  e.terms = HahnSum::from_terms(G, std::move(out));
  return e;
}

std::optional<Quad> residue(const FieldElement& x) {
  if (x.is_zero()) return Quad(0);
  const int s = x.group().sign(*x.valuation());
  if (s < 0) return std::nullopt;
  if (s > 0) return Quad(0);
  return x.leading_coeff();
}

// ---------------------------------------------------------------------------
// Lifting and adjunction

FieldElement lift(const FieldElement& x, const FieldPtr& target) {
  if (x.field() == target) return x;
  const auto map = target->coord_map_from(x.field().get());
  if (!map) {
    // Constants of a trivially valued field embed anywhere they fit.
    if (x.group().dim() == 0) {
      if (x.num().is_zero()) return FieldElement(target, Quad(0));
      return FieldElement(target, x.num().leading().coeff / x.den().leading().coeff);
    }
    throw std::invalid_argument("cannot lift from " + x.field()->str() + " into " + target->str());
  }
  const std::size_t dim = target->group().dim();
  auto lift_sum = [&](const HahnSum& s) {
    std::vector<Term> terms;
    for (const auto& t : s.terms()) terms.push_back({lift_exponent(t.exp, *map, dim), t.coeff});
    return HahnSum::from_terms(target->group(), std::move(terms));
  };
  return FieldElement(target, lift_sum(x.num()), lift_sum(x.den()));
}

std::optional<GroupElem> descend_exponent(const GroupElem& g, const std::vector<std::size_t>& coord_map,
                                          std::size_t ancestor_dim) {
  GroupElem r(ancestor_dim);
  std::vector<bool> hit(g.dim(), false);
  for (std::size_t i = 0; i < ancestor_dim; ++i) {
    r.coords[i] = g.coords[coord_map[i]];
    hit[coord_map[i]] = true;
  }
  for (std::size_t j = 0; j < g.dim(); ++j) {
    if (!hit[j] && sgn(g.coords[j]) != 0) return std::nullopt;
  }
  return r;
}

std::optional<FieldElement> descend(const FieldElement& x, const FieldPtr& ancestor) {
  if (x.field() == ancestor) return x;
  const auto map = x.field()->coord_map_from(ancestor.get());
  if (!map) return std::nullopt;
  const std::size_t dim = ancestor->group().dim();
  auto down = [&](const HahnSum& s) -> std::optional<HahnSum> {
    std::vector<Term> terms;
    for (const auto& t : s.terms()) {
      auto e = descend_exponent(t.exp, *map, dim);
      if (!e) return std::nullopt;
      terms.push_back({std::move(*e), t.coeff});
    }
    return HahnSum::from_terms(ancestor->group(), std::move(terms));
  };
  auto n = down(x.num());
  auto d = down(x.den());
  if (!n || !d) return std::nullopt;
  return FieldElement(ancestor, std::move(*n), std::move(*d));
}

Quad coefficient_at(const FieldElement& x, const GroupElem& gamma, std::size_t max_steps) {
  const Expansion e = expand(x, gamma, max_steps);
  if (e.exhausted) throw std::runtime_error("expansion step bound reached before " + gamma.str());
  for (const auto& t : e.terms.terms()) {
    if (t.exp == gamma) return t.coeff;
  }
  return Quad(0);
}

std::pair<FieldPtr, FieldElement> adjoin_infinitesimal(const FieldPtr& F, const GroupCut& at_raw, int sign,
                                                       std::string name) {
  using K = GroupCut::Kind;
  if (sign == 0) throw std::invalid_argument("infinitesimal sign must be nonzero");
  const ValueGroup& G = F->group();
  const GroupCut at = canonical(G, at_raw);
  std::size_t insert_at = 0;
  int offset = 1;
  GroupElem base = G.zero();
  switch (at.kind) {
    case K::PlusInf: insert_at = 0; offset = 1; break;
    case K::MinusInf: insert_at = 0; offset = -1; break;
    case K::Above: insert_at = G.num_blocks(); offset = 1; base = at.at; break;
    case K::Below: insert_at = G.num_blocks(); offset = -1; base = at.at; break;
    case K::CosetUpper: insert_at = at.level; offset = 1; base = at.at; break;
    case K::CosetLower: insert_at = at.level; offset = -1; base = at.at; break;
  }
  std::vector<std::size_t> map;
  ValueGroup G2 = G.insert_block(insert_at, map);
  auto F2 = std::make_shared<HahnField>();
  F2->coeff_d_ = F->coeff_d_;
  F2->group_ = std::move(G2);
  F2->name_ = name.empty() ? F->name_ + "<eps>" : std::move(name);
  F2->parent_ = F;
  F2->parent_map_ = map;
  const std::size_t new_coord = insert_at < G.num_blocks() ? G.block_begin(insert_at) : G.dim();
  GroupElem exp = lift_exponent(base, map, F2->group_.dim());
  exp.coords[new_coord] = offset;
  FieldPtr out = F2;
  FieldElement eps = FieldElement::monomial(out, std::move(exp), Quad(sign > 0 ? 1 : -1));
  return {out, eps};
}

std::pair<FieldPtr, std::vector<FieldElement>> adjoin_weighted_block(const FieldPtr& F, std::vector<Quad> weights,
                                                                     std::string name) {
  const ValueGroup& G = F->group();
  const std::size_t n = weights.size();
  std::vector<std::vector<Quad>> blocks{std::move(weights)};
  for (std::size_t b = 0; b < G.num_blocks(); ++b) blocks.push_back(G.block_weights(b));
  auto F2 = std::make_shared<HahnField>();
  F2->coeff_d_ = F->coeff_d_;
  F2->group_ = ValueGroup::from_blocks(std::move(blocks));
  F2->name_ = name.empty() ? F->name_ + "<eps>" : std::move(name);
  F2->parent_ = F;
  F2->parent_map_.resize(G.dim());
  for (std::size_t i = 0; i < G.dim(); ++i) F2->parent_map_[i] = i + n;
  FieldPtr out = F2;
  std::vector<FieldElement> eps;
  for (std::size_t i = 0; i < n; ++i) eps.push_back(FieldElement::monomial(out, GroupElem::unit(out->group().dim(), i)));
  return {out, eps};
}

// ---------------------------------------------------------------------------
// Field views

Field Field::full(FieldPtr ambient, std::string name) {
  const bool rational = ambient->coeff_radicand() == 1;
  CoordSubgroup all = CoordSubgroup::whole(ambient->group());
  return sub(std::move(ambient), rational, std::move(all), std::move(name));
}

Field Field::sub(FieldPtr ambient, bool rational_coeffs, CoordSubgroup coords, std::string name) {
  if (coords.mask.size() != ambient->group().dim()) throw std::invalid_argument("subfield mask dimension");
  Field f;
  f.emb_ = std::make_shared<SubgroupEmbedding>(ambient->group(), std::move(coords));
  f.ambient_ = std::move(ambient);
  f.rational_coeffs_ = rational_coeffs || f.ambient_->coeff_radicand() == 1;
  f.name_ = std::move(name);
  return f;
}

bool Field::admits_coeff(const Quad& c) const { return rational_coeffs_ ? c.is_rational() : ambient_->admits(c); }

bool Field::contains(const FieldElement& x) const {
  if (x.field() != ambient_) return false;
  for (const auto* s : {&x.num(), &x.den()}) {
    for (const auto& t : s->terms()) {
      if (!coords().contains(t.exp) || !admits_coeff(t.coeff)) return false;
    }
  }
  return true;
}

std::optional<GroupElem> Field::valuation(const FieldElement& x) const {
  auto v = x.valuation();
  if (!v) return std::nullopt;
  auto p = emb_->project(*v);
  if (!p) throw std::invalid_argument("valuation " + v->str() + " outside the value group of " + str());
  return p;
}

FieldElement Field::monomial(const GroupElem& own_exp, Quad c) const {
  if (!admits_coeff(c)) throw std::domain_error("coefficient not in " + str());
  return FieldElement::monomial(ambient_, emb_->inject(own_exp), std::move(c));
}

bool Field::is_subfield_of(const Field& F) const {
  if (ambient_ != F.ambient_) return false;
  if (!rational_coeffs_ && F.rational_coeffs_) return false;
  for (std::size_t i = 0; i < coords().mask.size(); ++i) {
    if (coords().mask[i] && !F.coords().mask[i]) return false;
  }
  return true;
}

Field Field::lifted(const FieldPtr& extension) const {
  if (extension == ambient_) return *this;
  const auto map = extension->coord_map_from(ambient_.get());
  if (!map) throw std::invalid_argument("not an extension of " + ambient_->str());
  CoordSubgroup mask = CoordSubgroup::trivial(extension->group());
  for (std::size_t i = 0; i < map->size(); ++i) mask.mask[(*map)[i]] = coords().mask[i];
  return sub(extension, rational_coeffs_, std::move(mask), name_);
}

SubgroupEmbedding Field::value_embedding_into(const Field& F) const {
  if (!is_subfield_of(F)) throw std::invalid_argument(str() + " is not a subfield of " + F.str());
  CoordSubgroup mask;
  for (std::size_t i = 0; i < F.coords().mask.size(); ++i) {
    if (F.coords().mask[i]) mask.mask.push_back(coords().mask[i]);
  }
  return SubgroupEmbedding(F.value_group(), std::move(mask));
}

std::string Field::str() const {
  if (!name_.empty()) return name_;
  std::string s = "sub(" + ambient_->str() + "; " + (rational_coeffs_ ? "Q" : "k") + "; coords";
  for (std::size_t i = 0; i < coords().mask.size(); ++i) {
    if (coords().mask[i]) s += " " + std::to_string(i);
  }
  return s + ")";
}

bool operator==(const Field& a, const Field& b) {
  return a.ambient_ == b.ambient_ && a.rational_coeffs_ == b.rational_coeffs_ && a.coords() == b.coords();
}

std::pair<FieldPtr, FieldElement> adjoin_infinitesimal(const Field& F, const GroupCut& at, int sign,
                                                       std::string name) {
  return adjoin_infinitesimal(F.ambient(), F.embedding().sup_image(canonical(F.value_group(), at)), sign,
                              std::move(name));
}

}  // namespace rplace
