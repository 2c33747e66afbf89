// Copyright 2026 The whqrom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "whqrom/qrom.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "whqrom/error.hpp"

namespace whqrom::qrom {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t width_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

}  // namespace

QromCircuit::QromCircuit(int eta, int digits, int ancillas)
    : eta_(eta), digits_(digits), ancillas_(ancillas) {
  if (eta < 0 || digits < 1 || eta + digits > wht::kMaxBits)
    throw RangeError("invalid circuit register sizes");
  if (ancillas < 0) throw RangeError("negative ancilla count");
}

void QromCircuit::append(Gate g) {
  if (auto* p = std::get_if<Pfx>(&g)) {
    if (p->mask == 0) return;
    if (!gates_.empty()) {
      if (auto* last = std::get_if<Pfx>(&gates_.back())) {
        last->mask ^= p->mask;
        if (last->mask == 0) gates_.pop_back();
        return;
      }
    }
  }
  gates_.push_back(std::move(g));
}

void QromCircuit::append_raw(Gate g) { gates_.push_back(std::move(g)); }

std::vector<Term> adder_terms(const QromCircuit& circuit) {
  std::vector<Term> out;
  std::uint64_t cum = 0;
  for (const auto& g : circuit.gates()) {
    if (auto* p = std::get_if<Pfx>(&g)) {
      cum ^= p->mask;
    } else if (auto* a = std::get_if<Adder>(&g)) {
      out.push_back({cum, a->k});
    } else {
      throw Error("adder_terms: circuit contains gates other than PFX and ADD");
    }
  }
  if (cum != 0) throw Error("adder_terms: PFX masks do not cancel");
  return out;
}

std::uint64_t gray_rank(std::uint64_t z) {
  for (int s = 1; s < 64; s <<= 1) z ^= z >> s;
  return z;
}

namespace {

struct Entry {
  std::uint64_t z;
  std::int64_t c;
};

std::vector<Entry> ordered_entries(const wht::TruncatedSpectrum& spectrum, Ordering ordering) {
  std::vector<Entry> e;
  for (std::size_t i = 0; i < spectrum.k(); ++i)
    if (spectrum.coefficient_at(i) != 0)
      e.push_back({spectrum.support()[i], spectrum.coefficient_at(i)});
  if (ordering == Ordering::GrayCode) {
    std::sort(e.begin(), e.end(),
              [](const Entry& a, const Entry& b) { return gray_rank(a.z) < gray_rank(b.z); });
  } else {
    auto mag = [](std::int64_t c) { return c < 0 ? -c : c; };
    std::sort(e.begin(), e.end(), [&](const Entry& a, const Entry& b) {
      if (mag(a.c) != mag(b.c)) return mag(a.c) > mag(b.c);
      return a.z < b.z;
    });
  }
  return e;
}

}  // namespace

QromCircuit synthesize(const wht::TruncatedSpectrum& spectrum, Ordering ordering) {
  QromCircuit c(spectrum.eta(), spectrum.digits());
  const int b = spectrum.payload_bits();
  for (const auto& e : ordered_entries(spectrum, ordering)) {
    c.append(Pfx{e.z, b});
    c.append(Adder{wrap(e.c, b), b});
    c.append(Pfx{e.z, b});
  }
  return c;
}

QromCircuit naive_product(const wht::TruncatedSpectrum& spectrum, Ordering ordering) {
  QromCircuit c(spectrum.eta(), spectrum.digits());
  const int b = spectrum.payload_bits();
  for (const auto& e : ordered_entries(spectrum, ordering)) {
    if (e.z != 0) c.append_raw(Pfx{e.z, b});
    c.append_raw(Adder{wrap(e.c, b), b});
    if (e.z != 0) c.append_raw(Pfx{e.z, b});
  }
  return c;
}

std::int64_t wrap(std::int64_t k, int width) {
  const std::uint64_t m = width_mask(width);
  std::uint64_t u = static_cast<std::uint64_t>(k) & m;
  if (width < 64 && u > (std::uint64_t{1} << (width - 1))) u |= ~m;
  return static_cast<std::int64_t>(u);
}

int lsb(std::int64_t k, int width) {
  const std::uint64_t u = static_cast<std::uint64_t>(k) & width_mask(width);
  return u == 0 ? width : std::countr_zero(u);
}

std::uint64_t adder_t_count(std::int64_t k, int width) {
  const int l = lsb(k, width);
  if (l >= width) return 0;
  return 4 * static_cast<std::uint64_t>(std::max(0, width - 2 - l));
}

std::uint64_t controlled_adder_t_count(std::int64_t k, int width) {
  const int l = lsb(k, width);
  if (l >= width) return 0;
  return 4 * static_cast<std::uint64_t>(std::max(0, width - 1 - l));
}

namespace {

enum class Variant { Minus, Plus };

struct PairPlan {
  std::size_t first;
  std::size_t second;
  Variant variant;
};

std::int64_t merged_constant(const Term& a, const Term& b, Variant v, int width) {
  return wrap(v == Variant::Minus ? a.k - b.k : a.k + b.k, width);
}

std::int64_t controlled_constant(const Term& b, Variant v, int width) {
  return wrap(v == Variant::Minus ? 2 * b.k : -2 * b.k, width);
}

std::uint64_t pair_t(const Term& a, const Term& b, Variant v, int width) {
  return adder_t_count(merged_constant(a, b, v, width), width) +
         controlled_adder_t_count(controlled_constant(b, v, width), width);
}

QromCircuit build_paired(int eta, int digits, const std::vector<Term>& terms,
                         const std::vector<PairPlan>& plans) {
  const int b = eta + digits;
  QromCircuit c(eta, digits, plans.empty() ? 0 : 1);
  std::vector<int> role(terms.size(), -1);  // -1 single, -2 absorbed, else plan index
  for (std::size_t p = 0; p < plans.size(); ++p) {
    role[plans[p].first] = static_cast<int>(p);
    role[plans[p].second] = -2;
  }
  const int anc = c.ancilla_qubit(0);
  std::uint64_t cur = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (role[i] == -2) continue;
    const Term& t = terms[i];
    c.append(Pfx{cur ^ t.mask, b});
    cur = t.mask;
    if (role[i] == -1) {
      c.append(Adder{t.k, b});
      continue;
    }
    const PairPlan& plan = plans[static_cast<std::size_t>(role[i])];
    const Term& u = terms[plan.second];
    const std::int64_t merged = merged_constant(t, u, plan.variant, b);
    if (lsb(merged, b) < b) c.append(Adder{merged, b});
    const std::uint64_t diff = t.mask ^ u.mask;
    for (int q = 0; q < eta; ++q)
      if ((diff >> q) & 1) c.append(Cnot{q, anc});
    if (plan.variant == Variant::Minus) c.append(XGate{anc});
    c.append(ControlledAdder{controlled_constant(u, plan.variant, b), b, anc});
    if (plan.variant == Variant::Minus) c.append(XGate{anc});
    for (int q = eta - 1; q >= 0; --q)
      if ((diff >> q) & 1) c.append(Cnot{q, anc});
  }
  c.append(Pfx{cur, b});
  return c;
}

}  // namespace

QromCircuit pair_cancel(const QromCircuit& circuit, const wht::TruncatedSpectrum& spectrum) {
  if (circuit.eta() != spectrum.eta() || circuit.digits() != spectrum.digits())
    throw ShapeError("pair_cancel: circuit and spectrum sizes differ");
  for (const auto& g : circuit.gates())
    if (!std::holds_alternative<Pfx>(g) && !std::holds_alternative<Adder>(g)) return circuit;
  const std::vector<Term> terms = adder_terms(circuit);
  const int b = spectrum.payload_bits();
  {
    std::unordered_map<std::uint64_t, std::int64_t> coeff;
    for (std::size_t i = 0; i < spectrum.k(); ++i)
      coeff[spectrum.support()[i]] = spectrum.coefficient_at(i);
    for (const auto& t : terms) {
      auto it = coeff.find(t.mask);
      if (it == coeff.end() || wrap(it->second, b) != t.k)
        throw Error("pair_cancel: circuit does not implement the given spectrum");
    }
  }

  struct Candidate {
    std::uint64_t saving;
    std::size_t i, j;
    Variant v;
  };
  std::map<int, std::vector<std::size_t>> by_lsb;
  for (std::size_t i = 0; i < terms.size(); ++i) by_lsb[lsb(terms[i].k, b)].push_back(i);
  std::vector<Candidate> cands;
  for (const auto& [l, idx] : by_lsb) {
    for (std::size_t p = 0; p < idx.size(); ++p) {
      for (std::size_t q = p + 1; q < idx.size(); ++q) {
        const Term& a = terms[idx[p]];
        const Term& c = terms[idx[q]];
        const std::uint64_t before = adder_t_count(a.k, b) + adder_t_count(c.k, b);
        const std::uint64_t plus = pair_t(a, c, Variant::Plus, b);
        const std::uint64_t minus = pair_t(a, c, Variant::Minus, b);
        const Variant v = plus <= minus ? Variant::Plus : Variant::Minus;
        const std::uint64_t after = std::min(plus, minus);
        if (after < before) cands.push_back({before - after, idx[p], idx[q], v});
      }
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    if (x.saving != y.saving) return x.saving > y.saving;
    if (x.i != y.i) return x.i < y.i;
    return x.j < y.j;
  });

  std::vector<PairPlan> accepted;
  std::vector<bool> used(terms.size(), false);
  CostReport best = cost(build_paired(circuit.eta(), circuit.digits(), terms, accepted));
  for (const auto& cd : cands) {
    if (used[cd.i] || used[cd.j]) continue;
    accepted.push_back({cd.i, cd.j, cd.v});
    const CostReport trial = cost(build_paired(circuit.eta(), circuit.digits(), terms, accepted));
    if (trial.tCount < best.tCount && trial.cnotCount <= best.cnotCount) {
      best = trial;
      used[cd.i] = used[cd.j] = true;
    } else {
      accepted.pop_back();
    }
  }
  return build_paired(circuit.eta(), circuit.digits(), terms, accepted);
}

CostReport cost(const QromCircuit& circuit) {
  CostReport r;
  std::uint64_t transient = 0;
  std::uint64_t single = 0;
  for (const auto& g : circuit.gates()) {
    std::visit(
        overloaded{
            [&](const Pfx& p) {
              const int h = wht::popcount(p.mask);
              if (h > 0) r.cnotCount += 2 * static_cast<std::uint64_t>(h - 1) +
                                        static_cast<std::uint64_t>(p.width);
            },
            [&](const Adder& a) {
              const std::uint64_t t = adder_t_count(a.k, a.width);
              r.tCount += t;
              r.tDepth += t / 4;
              transient = std::max(transient, t / 4);
            },
            [&](const ControlledAdder& a) {
              const std::uint64_t t = controlled_adder_t_count(a.k, a.width);
              r.tCount += t;
              r.tDepth += t / 4;
              transient = std::max(transient, t / 4);
            },
            [&](const Cnot&) { r.cnotCount += 1; },
            [&](const CSwap& s) {
              r.tCount += 4 * s.pairs.size();
              r.cnotCount += 2 * s.pairs.size();
              if (!s.pairs.empty()) r.tDepth += 1;
            },
            [&](const XGate&) { ++single; },
            [&](const Hadamard&) { ++single; },
            [&](const SGate&) { ++single; },
            [&](const SDagger&) { ++single; },
        },
        g);
  }
  r.toffoliCount = r.tCount / 4;
  r.cliffordCount = r.cnotCount + single;
  r.qubitCount = static_cast<std::uint64_t>(circuit.register_qubits()) + transient;
  r.quantumVolume = r.tCount * r.qubitCount;
  return r;
}

namespace {

struct State {
  int eta;
  int b;
  std::uint64_t x;
  std::uint64_t y;
  std::uint64_t anc;

  bool get(int q) const {
    if (q < eta) return (x >> q) & 1;
    if (q < eta + b) return (y >> (q - eta)) & 1;
    return (anc >> (q - eta - b)) & 1;
  }
  void flip(int q) {
    if (q < eta)
      x ^= std::uint64_t{1} << q;
    else if (q < eta + b)
      y ^= std::uint64_t{1} << (q - eta);
    else
      anc ^= std::uint64_t{1} << (q - eta - b);
  }
};

}  // namespace

std::uint64_t simulate(const QromCircuit& circuit, std::uint64_t x, std::uint64_t y) {
  const int b = circuit.payload_bits();
  const std::uint64_t m = width_mask(b);
  if (x >= (std::uint64_t{1} << circuit.eta())) throw RangeError("simulate: address out of range");
  if ((y & ~m) != 0) throw RangeError("simulate: payload value out of range");
  State s{circuit.eta(), b, x, y, 0};
  const int nq = circuit.register_qubits();
  auto check = [&](int q) {
    if (q < 0 || q >= nq) throw RangeError("gate acts on qubit outside the register");
  };
  for (const auto& g : circuit.gates()) {
    std::visit(overloaded{
                   [&](const Pfx& p) {
                     if (wht::parity(s.x & p.mask)) s.y = ~s.y & m;
                   },
                   [&](const Adder& a) { s.y = (s.y + static_cast<std::uint64_t>(a.k)) & m; },
                   [&](const ControlledAdder& a) {
                     check(a.control);
                     if (s.get(a.control)) s.y = (s.y + static_cast<std::uint64_t>(a.k)) & m;
                   },
                   [&](const Cnot& c) {
                     check(c.control);
                     check(c.target);
                     if (s.get(c.control)) s.flip(c.target);
                   },
                   [&](const CSwap& w) {
                     check(w.control);
                     if (!s.get(w.control)) return;
                     for (auto [p, q] : w.pairs) {
                       check(p);
                       check(q);
                       if (s.get(p) != s.get(q)) {
                         s.flip(p);
                         s.flip(q);
                       }
                     }
                   },
                   [&](const XGate& g1) {
                     check(g1.target);
                     s.flip(g1.target);
                   },
                   [&](const Hadamard&) { throw Error("simulate: H is not a classical gate"); },
                   [&](const SGate&) { throw Error("simulate: S is not a classical gate"); },
                   [&](const SDagger&) { throw Error("simulate: SDG is not a classical gate"); },
               },
               g);
  }
  if (s.anc != 0) throw NumericalError("simulate: ancilla not returned to zero");
  return s.y;
}

std::string to_text(const QromCircuit& circuit) {
  std::ostringstream out;
  out << "QROM " << circuit.eta() << ' ' << circuit.digits() << ' ' << circuit.ancilla_count()
      << '\n';
  for (const auto& g : circuit.gates()) {
    std::visit(overloaded{
                   [&](const Pfx& p) { out << "PFX " << std::hex << p.mask << std::dec << ' '
                                           << p.width << '\n'; },
                   [&](const Adder& a) { out << "ADD " << a.k << ' ' << a.width << '\n'; },
                   [&](const ControlledAdder& a) {
                     out << "CADD " << a.k << ' ' << a.width << ' ' << a.control << '\n';
                   },
                   [&](const Cnot& c) { out << "CNOT " << c.control << ' ' << c.target << '\n'; },
                   [&](const CSwap& s) {
                     out << "CSWAP " << s.control;
                     for (auto [p, q] : s.pairs) out << ' ' << p << ':' << q;
                     out << '\n';
                   },
                   [&](const XGate& g1) { out << "X " << g1.target << '\n'; },
                   [&](const Hadamard& g1) { out << "H " << g1.target << '\n'; },
                   [&](const SGate& g1) { out << "S " << g1.target << '\n'; },
                   [&](const SDagger& g1) { out << "SDG " << g1.target << '\n'; },
               },
               g);
  }
  return out.str();
}

QromCircuit from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<QromCircuit> c;
  auto fail = [&](const std::string& what) { throw ParseError(lineno, what); };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    if (!c) {
      int eta = 0, digits = 0, anc = 0;
      if (op != "QROM" || !(ls >> eta >> digits >> anc)) fail("expected 'QROM <eta> <d> <anc>'");
      try {
        c.emplace(eta, digits, anc);
      } catch (const Error& e) {
        fail(e.what());
      }
      continue;
    }
    bool ok = true;
    if (op == "PFX") {
      std::uint64_t mask = 0;
      int w = 0;
      ok = static_cast<bool>(ls >> std::hex >> mask >> std::dec >> w);
      if (ok) c->append_raw(Pfx{mask, w});
    } else if (op == "ADD") {
      std::int64_t k = 0;
      int w = 0;
      ok = static_cast<bool>(ls >> k >> w);
      if (ok) c->append_raw(Adder{k, w});
    } else if (op == "CADD") {
      std::int64_t k = 0;
      int w = 0, ctl = 0;
      ok = static_cast<bool>(ls >> k >> w >> ctl);
      if (ok) c->append_raw(ControlledAdder{k, w, ctl});
    } else if (op == "CNOT") {
      int a = 0, t = 0;
      ok = static_cast<bool>(ls >> a >> t);
      if (ok) c->append_raw(Cnot{a, t});
    } else if (op == "CSWAP") {
      CSwap s{};
      ok = static_cast<bool>(ls >> s.control);
      std::string pair;
      while (ok && ls >> pair) {
        auto colon = pair.find(':');
        if (colon == std::string::npos) {
          ok = false;
          break;
        }
        try {
          s.pairs.emplace_back(std::stoi(pair.substr(0, colon)), std::stoi(pair.substr(colon + 1)));
        } catch (const std::exception&) {
          ok = false;
        }
      }
      if (ok) c->append_raw(std::move(s));
    } else if (op == "X" || op == "H" || op == "S" || op == "SDG") {
      int t = 0;
      ok = static_cast<bool>(ls >> t);
      if (ok) {
        if (op == "X") c->append_raw(XGate{t});
        if (op == "H") c->append_raw(Hadamard{t});
        if (op == "S") c->append_raw(SGate{t});
        if (op == "SDG") c->append_raw(SDagger{t});
      }
    } else {
      fail("unknown gate '" + op + "'");
    }
    if (!ok) fail("malformed operands for " + op);
    std::string rest;
    if (ls >> rest) fail("trailing tokens after " + op);
  }
  if (!c) throw ParseError(lineno, "missing QROM header");
  return *c;
}

SplitSupport split_support(const wht::TruncatedSpectrum& spectrum, Ordering ordering) {
  std::vector<std::uint64_t> s1, s2;
  for (std::size_t i = 0; i < spectrum.k(); ++i)
    (i % 2 == 0 ? s1 : s2).push_back(spectrum.support()[i]);
  std::vector<std::int64_t> full(std::size_t{1} << spectrum.eta(), 0);
  for (std::size_t i = 0; i < spectrum.k(); ++i) full[spectrum.support()[i]] = spectrum.coefficient_at(i);
  const wht::WalshSpectrum base(spectrum.eta(), spectrum.digits(), std::move(full));
  return {synthesize(wht::TruncatedSpectrum(base, std::move(s1)), ordering),
          synthesize(wht::TruncatedSpectrum(base, std::move(s2)), ordering)};
}

CostReport split_support_cost(const SplitSupport& split) {
  const CostReport a = cost(split.first);
  const CostReport c = cost(split.second);
  const std::uint64_t b = static_cast<std::uint64_t>(split.first.payload_bits());
  const std::uint64_t join_toffoli = b > 1 ? b - 1 : 0;
  CostReport r;
  r.tCount = a.tCount + c.tCount + 4 * join_toffoli;
  r.toffoliCount = r.tCount / 4;
  r.cnotCount = a.cnotCount + c.cnotCount;
  r.cliffordCount = a.cliffordCount + c.cliffordCount;
  const std::uint64_t base = static_cast<std::uint64_t>(split.first.eta());
  // The halves share the address register and run in parallel.
  r.qubitCount = a.qubitCount + c.qubitCount - base;
  r.tDepth = std::max(a.tDepth, c.tDepth) + join_toffoli;
  r.quantumVolume = r.tCount * r.qubitCount;
  return r;
}

}  // namespace whqrom::qrom
