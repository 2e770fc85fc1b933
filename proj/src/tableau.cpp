#include "psc/tableau.hpp"

#include "psc/error.hpp"

namespace psc {

namespace {

int lowest_letter_bit(const PauliString& p) {
  int n = p.num_qubits();
  for (int q = 0; q < n; ++q) {
    if (p.x_bit(q)) return 2 * q;
    if (p.z_bit(q)) return 2 * q + 1;
  }
  return -1;
}

bool has_bit(const PauliString& p, int bit) {
  return (bit & 1) ? p.z_bit(bit / 2) : p.x_bit(bit / 2);
}

// Row echelon over letters with exact phases; rows must commute pairwise.
struct Echelon {
  std::vector<std::pair<int, PauliString>> rows;  // (pivot bit, operator)

  // Reduces p as far as possible; returns the residue.
  PauliString reduce(PauliString p) const {
    for (auto& [pivot, row] : rows)
      if (has_bit(p, pivot)) p = PauliString::mul(row, p);
    return p;
  }

  // Adds a row; returns false when p is dependent (residue has no letters).
  bool insert(const PauliString& p, PauliString* residue = nullptr) {
    PauliString r = reduce(p);
    if (residue) *residue = r;
    int pivot = lowest_letter_bit(r);
    if (pivot < 0) return false;
    size_t at = 0;
    while (at < rows.size() && rows[at].first < pivot) ++at;
    rows.insert(rows.begin() + at, {pivot, r});
    return true;
  }
};

}  // namespace

StabilizerEngine::StabilizerEngine(int num_qubits, const std::vector<PauliString>& generators)
    : n_(num_qubits), gens_(generators) {
  require((int)gens_.size() >= n_, ErrorCode::RankDeficient,
          "state needs " + std::to_string(n_) + " generators, got " +
              std::to_string(gens_.size()));
  Echelon ech;
  int rank = 0;
  for (size_t i = 0; i < gens_.size(); ++i) {
    const PauliString& g = gens_[i];
    require(g.num_qubits() == n_, ErrorCode::ValidationFailed, "generator qubit count mismatch");
    require(g.hermitian(), ErrorCode::NonHermitianObservable, "generator not Hermitian");
    for (size_t j = 0; j < i; ++j)
      require(g.commutes(gens_[j]), ErrorCode::NonCommuting,
              "generators " + std::to_string(j) + "," + std::to_string(i) + " anticommute");
    PauliString res = PauliString::identity(n_);
    if (ech.insert(g, &res)) {
      ++rank;
    } else {
      require(res.phase_exp() == 0, ErrorCode::Inconsistent,
              "generators multiply to -identity");
      fail(ErrorCode::RankDeficient, "dependent generator " + std::to_string(i));
    }
  }
  require(rank == n_, ErrorCode::RankDeficient, "generators span rank " + std::to_string(rank));
}

void StabilizerEngine::apply_rotation(const PauliString& w, int zeta) {
  require(w.hermitian(), ErrorCode::NonHermitianAxis, "rotation axis not Hermitian");
  require(zeta == 1 || zeta == -1, ErrorCode::ValidationFailed, "bad rotation sense");
  for (PauliString& g : gens_) {
    if (g.commutes(w)) continue;
    g = PauliString::mul(w, g);
    g.mul_phase_exp(zeta > 0 ? 3 : 1);  // U g U^dag = -+ i W g
  }
}

void StabilizerEngine::apply_pauli(const PauliString& p) {
  for (PauliString& g : gens_)
    if (!g.commutes(p)) g.mul_phase_exp(2);
}

int StabilizerEngine::determined_sign(const PauliString& obs) const {
  Echelon ech;
  for (const PauliString& g : gens_) ech.insert(g);
  PauliString r = ech.reduce(obs);
  if (lowest_letter_bit(r) >= 0) return 0;  // outside the group's letter span
  if (r.phase_exp() == 0) return +1;
  require(r.phase_exp() == 2, ErrorCode::ValidationFailed, "imaginary stabilizer sign");
  return -1;
}

int StabilizerEngine::expectation(const PauliString& obs) const {
  require(obs.hermitian(), ErrorCode::NonHermitianObservable, "observable not Hermitian");
  for (const PauliString& g : gens_)
    if (!g.commutes(obs)) return 0;
  int s = determined_sign(obs);
  require(s != 0, ErrorCode::ValidationFailed, "commuting observable not determined");
  return s;
}

int StabilizerEngine::measure(const PauliString& obs, Rng& rng) {
  require(obs.hermitian(), ErrorCode::NonHermitianObservable, "observable not Hermitian");
  int pivot = -1;
  for (int i = 0; i < (int)gens_.size(); ++i)
    if (!gens_[i].commutes(obs)) {
      pivot = i;
      break;
    }
  if (pivot < 0) return expectation(obs);
  for (int i = pivot + 1; i < (int)gens_.size(); ++i)
    if (!gens_[i].commutes(obs)) gens_[i] = PauliString::mul(gens_[pivot], gens_[i]);
  int s = rng.outcome();
  gens_[pivot] = obs;
  if (s < 0) gens_[pivot].mul_phase_exp(2);
  return s;
}

void StabilizerEngine::self_check() const {
  StabilizerEngine copy(n_, gens_);  // re-runs all construction checks
  (void)copy;
}

}  // namespace psc
