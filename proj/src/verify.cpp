#include "ban/verify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ban/duality.hpp"

namespace ban {

// ----------------------------------------------------------------- census

BigInt ParallelCensus::X(std::uint64_t p) const {
  BigInt total = 0;
  for (const auto& [m, a] : attractors_by_period) {
    if (p % m == 0) total += BigInt(m) * a;
  }
  return total;
}

std::optional<QuantityTable> ParallelCensus::table(const std::string& name,
                                                   std::uint64_t omega) const {
  for (const auto& [m, a] : attractors_by_period) {
    if (omega % m != 0) return std::nullopt;
  }
  std::map<std::uint64_t, BigInt> x;
  for (std::uint64_t p : divisors(omega)) x[p] = X(p);
  return derive_table(name, omega, x);
}

ParallelCensus parallel_census(const BooleanNetwork& net, const Caps& caps) {
  const TransitionGraph tg(net, UpdateMode::parallel(), caps);
  const AttractorReport report = attractors(tg);
  ParallelCensus c;
  c.width = net.size();
  for (const Attractor& a : report.attractors) {
    ++c.attractors_by_period[*a.period];
    c.lcm_period = std::lcm(c.lcm_period, *a.period);
  }
  c.recurring = report.recurring_count;
  c.convergence_time = report.convergence_time;
  return c;
}

// ----------------------------------------------------------------- matrix

std::size_t VerifyMatrix::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [s](const MatrixRow& r) { return r.status == s; }));
}

int VerifyMatrix::exit_code() const {
  if (count(Status::Fail) > 0) return 1;
  if (count(Status::PaperDiscrepancy) > 0) return 4;
  return 0;
}

Json VerifyMatrix::to_json() const {
  Json out;
  out["family"] = family;
  Json list = Json::array();
  for (const MatrixRow& r : rows) {
    Json item;
    item["subject"] = r.subject;
    item["check"] = r.check;
    item["status"] = to_string(r.status);
    item["detail"] = r.detail;
    list.push_back(std::move(item));
  }
  out["rows"] = std::move(list);
  Json summary;
  for (Status s : {Status::Pass, Status::Fail, Status::PaperDiscrepancy, Status::Excluded}) {
    summary[to_string(s)] = count(s);
  }
  out["summary"] = std::move(summary);
  return out;
}

std::string VerifyMatrix::to_text() const {
  std::size_t subject_width = 7;
  std::size_t check_width = 5;
  for (const MatrixRow& r : rows) {
    subject_width = std::max(subject_width, r.subject.size());
    check_width = std::max(check_width, r.check.size());
  }
  std::ostringstream out;
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  for (const MatrixRow& r : rows) {
    out << pad(to_string(r.status), 18) << pad(r.subject, subject_width + 2)
        << pad(r.check, check_width + 2) << r.detail << '\n';
  }
  out << family << ": " << count(Status::Pass) << " pass, "
      << count(Status::Fail) << " fail, " << count(Status::PaperDiscrepancy)
      << " paper-discrepancy, " << count(Status::Excluded) << " excluded\n";
  return out.str();
}

void VerifyMatrix::append(const VerifyMatrix& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

namespace {

std::string tables_mismatch(const QuantityTable& formula, const QuantityTable& census) {
  if (formula.omega != census.omega) return "different orders";
  std::ostringstream out;
  for (std::size_t k = 0; k < formula.rows.size(); ++k) {
    const auto& f = formula.rows[k];
    const auto& e = census.rows[k];
    if (f.X != e.X || f.X_min != e.X_min || f.A != e.A) {
      out << "p=" << f.p << " formula (X,X_min,A)=(" << f.X << ',' << f.X_min
          << ',' << f.A << ") enumeration (" << e.X << ',' << e.X_min << ','
          << e.A << "); ";
    }
  }
  if (formula.T != census.T) {
    out << "T formula " << formula.T << " enumeration " << census.T;
  }
  return out.str();
}

std::string table_summary(const QuantityTable& t) {
  std::ostringstream out;
  out << "w=" << t.omega << " X(w)=" << t.recurring() << " T=" << t.T
      << " mean=" << to_string(t.mean_period);
  return out.str();
}

MatrixRow printed_row(const Descriptor& d) {
  MatrixRow row{to_string(d), "printed-sums", Status::Pass, ""};
  std::ostringstream out;
  std::size_t bad = 0;
  for (const PrintedCheck& c : printed_sum_checks(d)) {
    if (c.matches()) continue;
    ++bad;
    out << c.quantity << '(' << c.p << "): printed "
        << (c.printed ? to_string(*c.printed) : std::string("ill-formed"))
        << " derived " << to_string(c.derived) << "; ";
  }
  if (bad > 0) {
    row.status = Status::PaperDiscrepancy;
    row.detail = out.str();
  } else {
    row.detail = "expanded sums agree with the convolution route";
  }
  return row;
}

MatrixRow bounds_row(const Descriptor& d, const QuantityTable& t,
                     Status on_violation = Status::Fail) {
  MatrixRow row{to_string(d), "bounds", Status::Pass, ""};
  try {
    const BoundsVerdict v = check_bounds(d, t);
    row.detail = v.detail;
    if (!v.passed()) row.status = on_violation;
  } catch (const ExcludedDescriptor& e) {
    row.status = Status::Excluded;
    row.detail = e.what();
  }
  return row;
}

}  // namespace

// ----------------------------------------------------------------- cycles

VerifyMatrix verify_cycles(int lo, int hi, const Caps& caps) {
  VerifyMatrix m;
  m.family = "cycles";
  for (int n = std::max(lo, 1); n <= hi; ++n) {
    for (Sign sign : {Sign::Positive, Sign::Negative}) {
      const Descriptor d = CycleDescriptor{n, sign};
      const std::string name = to_string(d);
      const BooleanNetwork net = build_network(d);
      const ParallelCensus census = parallel_census(net, caps);
      const QuantityTable formula = quantity_table(d);

      MatrixRow order{name, "order", Status::Pass,
                      "w=" + std::to_string(formula.omega) + " lcm of periods=" +
                          std::to_string(census.lcm_period)};
      if (census.lcm_period != formula.omega) order.status = Status::Fail;
      m.rows.push_back(order);

      MatrixRow q{name, "quantities", Status::Pass, table_summary(formula)};
      const auto enumerated = census.table(name, formula.omega);
      if (!enumerated) {
        q.status = Status::Fail;
        q.detail = "a period does not divide the order";
      } else if (const std::string diff = tables_mismatch(formula, *enumerated);
                 !diff.empty()) {
        q.status = Status::Fail;
        q.detail = diff;
      }
      m.rows.push_back(q);

      MatrixRow rec{name, "all-recurring", Status::Pass,
                    "recurring=" + std::to_string(census.recurring) +
                        " convergence=" + std::to_string(census.convergence_time)};
      if (census.recurring != (std::uint64_t{1} << n) || census.convergence_time != 0) {
        rec.status = Status::Fail;
      }
      m.rows.push_back(rec);
      m.rows.push_back(printed_row(d));
      m.rows.push_back(bounds_row(d, formula));

      if (n <= caps.asynchronous) {
        const AttractorReport a =
            attractors(TransitionGraph(net, UpdateMode::asynchronous(), caps));
        MatrixRow row{name, "async-attractors", Status::Pass, ""};
        bool ok = false;
        if (sign == Sign::Positive) {
          ok = a.attractors.size() == 2 && a.attractors[0].fixed_point() &&
               a.attractors[1].fixed_point() && a.attractors[0].states[0] == 0 &&
               a.attractors[1].states[0] == full_set(n);
          row.detail = std::to_string(a.fixed_points()) + " fixed points, " +
                       std::to_string(a.oscillations()) + " oscillations";
        } else {
          ok = a.attractors.size() == 1 &&
               a.attractors[0].length == 2 * static_cast<std::uint64_t>(n);
          row.detail = std::to_string(a.attractors.size()) +
                       " attractor(s), first of length " +
                       std::to_string(a.attractors.empty() ? 0 : a.attractors[0].length);
        }
        if (!ok) row.status = Status::Fail;
        m.rows.push_back(row);
      }
    }
  }
  return m;
}

// ---------------------------------------------------------- double-cycles

DoubleCycleFamily parse_family(const std::string& text) {
  if (text == "positive") return DoubleCycleFamily::Positive;
  if (text == "mixed") return DoubleCycleFamily::Mixed;
  if (text == "negative") return DoubleCycleFamily::Negative;
  if (text == "all" || text.empty()) return DoubleCycleFamily::All;
  throw Error("unknown double-cycle family '" + text + "'");
}

namespace {

std::vector<std::pair<Sign, Sign>> sign_patterns(DoubleCycleFamily f) {
  std::vector<std::pair<Sign, Sign>> out;
  if (f == DoubleCycleFamily::Positive || f == DoubleCycleFamily::All) {
    out.emplace_back(Sign::Positive, Sign::Positive);
  }
  if (f == DoubleCycleFamily::Mixed || f == DoubleCycleFamily::All) {
    out.emplace_back(Sign::Negative, Sign::Positive);
  }
  if (f == DoubleCycleFamily::Negative || f == DoubleCycleFamily::All) {
    out.emplace_back(Sign::Negative, Sign::Negative);
  }
  return out;
}

void mixed_rows(VerifyMatrix& m, const DoubleCycleDescriptor& dc,
                const ParallelCensus& census) {
  const Descriptor d = dc;
  const std::string name = to_string(d);
  const std::uint64_t omega = order_of(d);

  MatrixRow order{name, "order", Status::Pass,
                  "w=" + std::to_string(omega) + " lcm of periods=" +
                      std::to_string(census.lcm_period)};
  if (omega % census.lcm_period != 0) order.status = Status::PaperDiscrepancy;
  m.rows.push_back(order);

  // Side-by-side X rows: formula as printed against enumeration.
  std::ostringstream flagged;
  std::size_t documented = 0;
  std::size_t other = 0;
  std::size_t agree = 0;
  for (std::uint64_t p : divisors(omega)) {
    const BigInt printed = count_X(d, p);
    const BigInt truth = census.X(p);
    if (printed == truth) {
      ++agree;
      continue;
    }
    const bool factor = static_cast<std::uint64_t>(dc.l) % p == 0;
    (factor ? documented : other) += 1;
    flagged << "X(" << p << ") printed " << printed << " enumerated " << truth
            << (factor ? " [p|l]" : "") << "; ";
  }
  MatrixRow x{name, "X-side-by-side", Status::Pass,
              std::to_string(agree) + " rows agree"};
  if (documented + other > 0) {
    x.status = Status::PaperDiscrepancy;
    x.detail += "; " + flagged.str();
  }
  m.rows.push_back(x);

  MatrixRow q{name, "quantities", Status::Pass, ""};
  try {
    const QuantityTable formula = quantity_table(d);
    const auto enumerated = census.table(name, omega);
    const std::string diff =
        enumerated ? tables_mismatch(formula, *enumerated) : "period outside order";
    q.detail = diff.empty() ? table_summary(formula) : diff;
    if (!diff.empty()) q.status = Status::PaperDiscrepancy;
  } catch (const IntegralityViolation& e) {
    q.status = Status::PaperDiscrepancy;
    q.detail = e.what();
  }
  m.rows.push_back(q);
  m.rows.push_back(printed_row(d));

  const std::uint64_t true_order = census.lcm_period;
  const auto enumerated = census.table(name, true_order);
  MatrixRow b = bounds_row(d, *enumerated, Status::PaperDiscrepancy);
  b.detail = "enumerated table: " + b.detail;
  m.rows.push_back(b);
}

}  // namespace

VerifyMatrix verify_double_cycles(DoubleCycleFamily family, int max_size,
                                  const Caps& caps) {
  VerifyMatrix m;
  m.family = "double-cycles";
  for (int l = 1; l <= max_size; ++l) {
    for (int r = 1; l + r - 1 <= max_size; ++r) {
      for (const auto& [left, right] : sign_patterns(family)) {
        const DoubleCycleDescriptor dc{l, r, left, right, Junction::Or};
        const Descriptor d = dc;
        const std::string name = to_string(d);
        const ParallelCensus census = parallel_census(canonical_double_cycle(dc), caps);
        if (dc.mixed()) {
          mixed_rows(m, dc, census);
          continue;
        }
        const QuantityTable formula = quantity_table(d);
        MatrixRow order{name, "order", Status::Pass,
                        "w=" + std::to_string(formula.omega) + " lcm of periods=" +
                            std::to_string(census.lcm_period)};
        if (formula.omega % census.lcm_period != 0) order.status = Status::Fail;
        m.rows.push_back(order);

        MatrixRow q{name, "quantities", Status::Pass, table_summary(formula)};
        const auto enumerated = census.table(name, formula.omega);
        if (!enumerated) {
          q.status = Status::Fail;
          q.detail = "a period does not divide the order";
        } else if (const std::string diff = tables_mismatch(formula, *enumerated);
                   !diff.empty()) {
          q.status = Status::Fail;
          q.detail = diff;
        }
        m.rows.push_back(q);

        if (dc.positive()) {
          const Descriptor cycle =
              CycleDescriptor{static_cast<int>(dc.delta()), Sign::Positive};
          const std::string diff = tables_mismatch(quantity_table(cycle), formula);
          m.rows.push_back({name, "equals-" + to_string(cycle),
                            diff.empty() ? Status::Pass : Status::Fail,
                            diff.empty() ? "row-for-row" : diff});
        }
        m.rows.push_back(printed_row(d));
        m.rows.push_back(bounds_row(d, formula));
      }
    }
  }
  return m;
}

// -------------------------------------------------------------- sequences

VerifyMatrix verify_negative_async(int max_size, const Caps& caps) {
  VerifyMatrix m;
  m.family = "negative-async";
  for (int l = 1; l <= max_size; ++l) {
    for (int r = 1; l + r - 1 <= max_size; ++r) {
      const DoubleCycleDescriptor dc{l, r, Sign::Negative, Sign::Negative, Junction::And};
      const int n = dc.size();
      if (n > caps.asynchronous) continue;
      const AttractorReport a = attractors(
          TransitionGraph(canonical_double_cycle(dc), UpdateMode::asynchronous(), caps));
      const BigInt unreachable = unreachable_count(l, r);
      const BigInt expected = BigInt(std::uint64_t{1} << n) - unreachable;
      MatrixRow row{to_string(Descriptor{dc}), "unique-attractor", Status::Pass, ""};
      std::ostringstream out;
      out << a.attractors.size() << " attractor(s), recurring " << a.recurring_count
          << ", expected 2^" << n << " - " << unreachable << " = " << expected;
      row.detail = out.str();
      if (a.attractors.size() != 1 || BigInt(a.recurring_count) != expected) {
        row.status = Status::Fail;
      }
      m.rows.push_back(row);
    }
  }
  return m;
}

VerifyMatrix verify_sequences(int lo, int hi, const Caps& caps) {
  VerifyMatrix m;
  m.family = "sequences";
  const std::vector<std::pair<Sign, Sign>> patterns = sign_patterns(DoubleCycleFamily::All);
  for (int l = std::max(lo, 1); l <= hi; ++l) {
    for (int r = std::max(lo, 1); r <= hi; ++r) {
      for (const auto& [left, right] : patterns) {
        const DoubleCycleDescriptor dc{l, r, left, right, Junction::And};
        if (dc.size() > caps.asynchronous) continue;
        const std::string name = to_string(Descriptor{dc});
        const SequenceReport report = verify_sequence_theorems(dc, caps);
        std::map<std::string, std::uint64_t> worst(report.worst_steps.begin(),
                                                   report.worst_steps.end());
        for (const std::string& builtin : builtin_names()) {
          std::size_t runs = 0;
          const SequenceRecord* first_bad = nullptr;
          for (const SequenceRecord& rec : report.records) {
            if (rec.builtin != builtin) continue;
            ++runs;
            if (!first_bad && (rec.status == Status::Fail ||
                               rec.status == Status::PaperDiscrepancy)) {
              first_bad = &rec;
            }
          }
          if (runs == 0) continue;
          MatrixRow row{name, builtin, Status::Pass, ""};
          const std::size_t fails = report.count(builtin, Status::Fail);
          const std::size_t disc = report.count(builtin, Status::PaperDiscrepancy);
          const std::size_t excl = report.count(builtin, Status::Excluded);
          if (fails > 0) {
            row.status = Status::Fail;
          } else if (disc > 0) {
            row.status = Status::PaperDiscrepancy;
          }
          std::ostringstream out;
          const auto bound = step_bound(builtin, dc);
          out << "runs=" << runs << " worst=" << worst[builtin];
          if (bound) out << " bound=" << *bound;
          out << " fail=" << fails << " discrepancy=" << disc << " excluded=" << excl;
          if (first_bad) {
            out << "; first: start " << state_string(first_bad->start, dc.size());
            if (first_bad->target) {
              out << " target " << state_string(*first_bad->target, dc.size());
            }
            out << " steps " << first_bad->steps << " (" << first_bad->note << ')';
          }
          row.detail = out.str();
          m.rows.push_back(row);
        }
        m.rows.push_back({name, "async-transitions",
                          report.transitions_legal ? Status::Pass : Status::Fail,
                          "every single update is an asynchronous arc"});
        if (report.closure_checked) {
          m.rows.push_back({name, "closure",
                            report.closure_holds ? Status::Pass : Status::Fail,
                            "copy_p(comp(simp(x)), x') = x' for all pairs"});
        }
      }
    }
  }
  m.append(verify_negative_async(std::min(2 * hi - 1, caps.asynchronous), caps));
  return m;
}

// ---------------------------------------------------------------- duality

VerifyMatrix verify_duality(int max_size, const Caps& caps) {
  VerifyMatrix m;
  m.family = "duality";
  for (int l = 1; l <= max_size; ++l) {
    for (int r = 1; l + r - 1 <= max_size; ++r) {
      for (const auto& [left, right] : sign_patterns(DoubleCycleFamily::All)) {
        const int n = l + r - 1;
        std::vector<UpdateMode> modes = {UpdateMode::parallel(),
                                         UpdateMode::asynchronous()};
        if (n <= caps.elementary) modes.push_back(UpdateMode::elementary());
        std::vector<std::vector<int>> sequential;
        for (int i = 0; i < n; ++i) sequential.push_back({i});
        modes.push_back(UpdateMode::block_sequential(sequential));
        for (const UpdateMode& mode : modes) {
          const DualityResult res = check_and_or_duality(l, r, left, right, mode, caps);
          const DoubleCycleDescriptor dc{l, r, left, right, Junction::And};
          std::string subject = to_string(Descriptor{dc});
          subject = subject.substr(0, subject.rfind(':'));
          m.rows.push_back({subject, mode.to_string(),
                            res.isomorphic ? Status::Pass : Status::Fail,
                            res.isomorphic ? "complement map is an isomorphism"
                                           : res.counterexample});
        }
      }
    }
  }
  return m;
}

// ------------------------------------------------------ random networks

namespace {

Expr read_once(std::mt19937_64& rng, std::vector<int> vars) {
  std::uniform_int_distribution<int> coin(0, 1);
  if (vars.empty()) return Expr::constant(coin(rng) == 1);
  std::shuffle(vars.begin(), vars.end(), rng);
  std::vector<Expr> parts;
  for (int v : vars) {
    Expr lit = Expr::var(v);
    parts.push_back(coin(rng) == 1 ? Expr::negate(lit) : lit);
  }
  while (parts.size() > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
    const std::size_t a = pick(rng);
    Expr lhs = parts[a];
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(a));
    std::uniform_int_distribution<std::size_t> pick2(0, parts.size() - 1);
    const std::size_t b = pick2(rng);
    Expr rhs = parts[b];
    parts[b] = coin(rng) == 1 ? Expr::conj(lhs, rhs) : Expr::disj(lhs, rhs);
  }
  return parts.front();
}

std::vector<int> sample_support(std::mt19937_64& rng, int pool, int max_arity) {
  std::vector<int> all(static_cast<std::size_t>(pool));
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<int> size(0, std::min(pool, max_arity));
  all.resize(static_cast<std::size_t>(size(rng)));
  std::sort(all.begin(), all.end());
  return all;
}

constexpr int kMaxRandomArity = 3;

std::string describe(const BooleanNetwork& net) {
  std::string out;
  for (int i = 0; i < net.size(); ++i) {
    out += (i > 0 ? "; " : "") + std::string("f") + std::to_string(i) + "=" +
           net.local(i).to_string();
  }
  return out;
}

}  // namespace

BooleanNetwork random_acyclic_network(std::mt19937_64& rng, int n) {
  std::vector<Expr> exprs;
  for (int i = 0; i < n; ++i) {
    exprs.push_back(read_once(rng, sample_support(rng, i, kMaxRandomArity)));
  }
  return BooleanNetwork::from_expressions(exprs);
}

BooleanNetwork random_unate_network(std::mt19937_64& rng, int n) {
  std::vector<Expr> exprs;
  for (int i = 0; i < n; ++i) {
    exprs.push_back(read_once(rng, sample_support(rng, n, kMaxRandomArity)));
  }
  return BooleanNetwork::from_expressions(exprs);
}

VerifyMatrix verify_robert(int samples, std::uint64_t seed, int max_n,
                           const Caps& caps) {
  VerifyMatrix m;
  m.family = "robert";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> width(1, max_n);
  for (int k = 0; k < samples; ++k) {
    const int n = width(rng);
    const BooleanNetwork net = random_acyclic_network(rng, n);
    const Verdict v = check_robert(net, caps);
    MatrixRow row{"sample " + std::to_string(k) + " (n=" + std::to_string(n) + ")",
                  "acyclic", v.passed() ? Status::Pass : Status::Fail, v.detail};
    if (!v.passed()) row.detail += " | " + describe(net);
    m.rows.push_back(row);
  }
  return m;
}

VerifyMatrix verify_thomas(int samples, std::uint64_t seed, int max_n,
                           const Caps& caps) {
  VerifyMatrix m;
  m.family = "thomas";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> width(1, max_n);
  for (int k = 0; k < samples; ++k) {
    const int n = width(rng);
    const BooleanNetwork net = random_unate_network(rng, n);
    const FeedbackVerdict v =
        check_feedback_necessity(net, UpdateMode::asynchronous(), caps);
    const std::string subject =
        "sample " + std::to_string(k) + " (n=" + std::to_string(n) + ")";
    std::ostringstream stats;
    stats << v.stable_configurations << " stable, " << v.stable_oscillations
          << " oscillations, cycles +" << v.graph_has_positive_cycle << " -"
          << v.graph_has_negative_cycle;
    for (const auto& [check, verdict] :
         {std::pair{"positive-cycle", v.positive_cycle},
          std::pair{"negative-cycle", v.negative_cycle}}) {
      MatrixRow row{subject, check, verdict.passed() ? Status::Pass : Status::Fail,
                    verdict.detail + "; " + stats.str()};
      if (verdict.status == CheckStatus::Inapplicable) row.status = Status::Excluded;
      if (row.status == Status::Fail) row.detail += " | " + describe(net);
      m.rows.push_back(row);
    }
  }
  return m;
}

}  // namespace ban
