#include "falldeg.hpp"

#include <algorithm>
#include <deque>

#include "echelon.hpp"
#include "error.hpp"
#include "groebner.hpp"
#include "monomial.hpp"

namespace weil {

namespace {

// Incremental closure: V_{F,D} is built from V_{F,D-1}, which it contains.
// Going from D-1 to D only rows of degree exactly D-1, the generators of
// degree D, and rows that fall to degree <= D-1 during the step need
// multiplying; every older row of lower degree already has its variable
// multiples in the space.
template <class Rows>
class SpanEngine {
 public:
  SpanEngine(const PolySystem& F, MonomialOrder order)
      : ring_(F.ring), field_(F.ring->coeff_field()), table_(F.ring->nvars(), order), rows_(field_) {
    for (const auto& f : F.polys) {
      if (f.is_zero()) continue;
      if (!(*f.ring() == *ring_)) fail(ErrorCode::RingMismatch, "system polynomial outside the system ring");
      const auto d = static_cast<std::uint32_t>(f.degree());
      if (by_degree_.size() <= d) by_degree_.resize(d + 1);
      by_degree_[d].push_back(&f);
    }
    rows_.resize(table_.size());
    pivots_by_degree_.resize(1);
    process(0);
  }

  std::uint32_t degree() const { return degree_; }
  std::size_t dim() const { return dim_; }
  std::size_t dim_up_to(std::uint32_t j) const {
    std::size_t s = 0;
    for (std::uint32_t d = 0; d <= j && d < pivots_by_degree_.size(); ++d) s += pivots_by_degree_[d].size();
    return s;
  }
  const MonomialTable& table() const { return table_; }

  void advance() {
    const std::uint32_t prev = degree_;
    degree_ = prev + 1;
    table_.extend_to(degree_);
    rows_.resize(table_.size());
    pivots_by_degree_.resize(degree_ + 1);
    for (auto c : std::vector<std::size_t>(pivots_by_degree_[prev])) work_.push_back(c);
    process(degree_);
  }

  typename Rows::Vec vec_of(const MultiPoly& f) const {
    auto v = rows_.zero(table_.size());
    for (const auto& [e, c] : f.terms()) {
      auto col = table_.index(e);
      if (!col) fail(ErrorCode::DegreeTooHigh, "polynomial degree exceeds the span degree");
      Rows::set(v, *col, c.index());
    }
    return v;
  }

  bool contains(const MultiPoly& f) const {
    auto v = vec_of(f);
    return rows_.reduce_head(v) < 0;
  }

  DegreeSpan export_span() const {
    DegreeSpan s;
    s.ring = ring_;
    s.degree_cap = degree_;
    s.order = table_.order();
    const std::size_t ncols = table_.size();
    for (std::size_t c = 0; c < ncols; ++c) s.monomials.push_back(table_.exps(c));
    std::vector<std::size_t> pivots;
    for (const auto& level : pivots_by_degree_) pivots.insert(pivots.end(), level.begin(), level.end());
    std::sort(pivots.begin(), pivots.end());
    std::vector<std::vector<Elem>> reduced;
    std::vector<long> slot(ncols, -1);
    for (auto c : pivots) {
      auto dense = rows_.row_dense(c);
      std::vector<Elem> v(ncols);
      for (std::size_t j = 0; j < dense.size(); ++j) v[j] = Elem{dense[j]};
      for (std::size_t j = c; j-- > 0;) {
        if (v[j].is_zero() || slot[j] < 0) continue;
        const Elem f = field_.neg(v[j]);
        const auto& r = reduced[static_cast<std::size_t>(slot[j])];
        for (std::size_t t = 0; t <= j; ++t)
          if (!r[t].is_zero()) v[t] = field_.add(v[t], field_.mul(f, r[t]));
      }
      slot[c] = static_cast<long>(reduced.size());
      reduced.push_back(std::move(v));
    }
    s.basis = Matrix(reduced.size(), ncols);
    for (std::size_t r = 0; r < reduced.size(); ++r)
      for (std::size_t j = 0; j < ncols; ++j) s.basis.at(r, j) = reduced[r][j];
    s.pivots = std::move(pivots);
    return s;
  }

 private:
  void insert_vec(typename Rows::Vec v, std::uint32_t step) {
    const long lead = rows_.reduce_head(v);
    if (lead < 0) return;
    const auto col = static_cast<std::size_t>(lead);
    rows_.insert(std::move(v), col);
    ++dim_;
    const auto d = table_.degree_of(col);
    pivots_by_degree_[d].push_back(col);
    if (d < step) work_.push_back(col);
  }

  void process(std::uint32_t step) {
    if (step < by_degree_.size())
      for (const MultiPoly* f : by_degree_[step]) insert_vec(vec_of(*f), step);
    while (!work_.empty()) {
      const std::size_t col = work_.front();
      work_.pop_front();
      for (std::size_t v = 0; v < table_.nvars(); ++v)
        insert_vec(rows_.shifted(col, v, table_, table_.size()), step);
    }
  }

  RingPtr ring_;
  const Field& field_;
  MonomialTable table_;
  Rows rows_;
  std::uint32_t degree_ = 0;
  std::size_t dim_ = 0;
  std::vector<std::vector<const MultiPoly*>> by_degree_;
  std::vector<std::vector<std::size_t>> pivots_by_degree_;
  std::deque<std::size_t> work_;
};

template <class Fn>
auto with_engine(const PolySystem& F, MonomialOrder order, Fn&& fn) {
  if (!F.ring) fail(ErrorCode::InvalidArgument, "system without a ring");
  if (F.ring->coeff_field().size() == 2) {
    SpanEngine<Gf2Rows> engine(F, order);
    return fn(engine);
  }
  SpanEngine<TableRows> engine(F, order);
  return fn(engine);
}

}  // namespace

std::size_t DegreeSpan::dim_up_to(std::uint32_t j) const {
  return static_cast<std::size_t>(std::count_if(pivots.begin(), pivots.end(),
                                                 [&](std::size_t c) { return total_degree(monomials[c]) <= j; }));
}

MultiPoly DegreeSpan::row_poly(std::size_t r) const {
  MultiPoly f(ring);
  for (std::size_t c = 0; c < basis.cols(); ++c) f.add_term(monomials[c], basis.at(r, c));
  return f;
}

std::vector<MultiPoly> DegreeSpan::polys() const {
  std::vector<MultiPoly> out;
  for (std::size_t r = 0; r < basis.rows(); ++r) out.push_back(row_poly(r));
  return out;
}

DegreeSpan span_closure(const PolySystem& F, std::uint32_t i, MonomialOrder order) {
  return with_engine(F, order, [&](auto& engine) {
    while (engine.degree() < i) engine.advance();
    return engine.export_span();
  });
}

bool equiv_mod(const MultiPoly& f, const MultiPoly& g, std::uint32_t i, const PolySystem& F, MonomialOrder order) {
  const MultiPoly d = sub(f, g);
  if (d.degree() > static_cast<int>(i))
    fail(ErrorCode::DegreeTooHigh, "deg(f - g) = " + std::to_string(d.degree()) + " exceeds " + std::to_string(i));
  if (d.is_zero()) return true;
  return with_engine(F, order, [&](auto& engine) {
    while (engine.degree() < i) engine.advance();
    return engine.contains(d);
  });
}

std::uint32_t default_cap(const PolySystem& F) {
  const std::uint32_t q = F.ring->field().q();
  const int deg = std::max(F.degree(), 0);
  const std::uint32_t a = q * static_cast<std::uint32_t>(deg);
  const std::uint32_t b = (q - 1) * static_cast<std::uint32_t>(F.ring->nvars()) + 1;
  return std::max(a, b) + 2;
}

std::string to_string(FallStatus s) { return s == FallStatus::Certified ? "certified" : "cap-limited"; }

FallProfile last_fall_degree(const PolySystem& F, const FallOptions& options) {
  const std::uint32_t cap = options.cap.value_or(default_cap(F));
  if (cap < 1) fail(ErrorCode::InvalidArgument, "cap must be at least 1");
  FallProfile profile;
  profile.cap = cap;

  std::optional<GroebnerBasis> gb;
  std::vector<std::uint64_t> standard;
  if (options.certify) {
    try {
      gb = groebner_toy(F, GroebnerOptions{options.order, options.groebner_budget});
    } catch (const Error& err) {
      if (err.code() != ErrorCode::StepBudgetExceeded) throw;
      profile.note = "Groebner oracle exceeded its step budget; certification unavailable";
    }
  } else {
    profile.note = "certification disabled";
  }

  const std::size_t nvars = F.ring->nvars();
  return with_engine(F, options.order, [&](auto& engine) {
    while (engine.degree() < cap) {
      const std::size_t prev = engine.dim();
      engine.advance();
      const std::uint32_t i = engine.degree();
      FallRecord rec;
      rec.degree = i;
      rec.dim_V = engine.dim();
      rec.dim_V_cap_lower = engine.dim_up_to(i - 1);
      rec.dim_prev = prev;
      rec.fall = rec.dim_V_cap_lower > rec.dim_prev;
      profile.records.push_back(rec);
      if (rec.fall) profile.last_fall_degree = i;
      profile.degree_reached = i;
      if (gb && i >= gb->max_degree()) {
        // Counted only as far as the engine has stepped; counting to the cap
        // up front dominates the cost on wide rings.
        if (standard.size() <= i) standard = standard_monomial_counts(*gb, i);
        bool match = true;
        for (std::uint32_t j = 0; j <= i && match; ++j)
          match = engine.dim_up_to(j) == monomial_count_up_to(nvars, j) - standard[j];
        if (match) {
          profile.status = FallStatus::Certified;
          profile.note.clear();
          return profile;
        }
      }
    }
    if (gb && profile.note.empty()) profile.note = "no certificate within the cap";
    return profile;
  });
}

}  // namespace weil
