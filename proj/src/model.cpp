#include "ghzsim/model.hpp"

#include <cmath>

namespace ghzsim {

double PureState::norm() const {
    double s = 0.0;
    for (const auto& c : amplitudes) s += std::norm(c);
    return std::sqrt(s);
}

ComplexMatrix PureState::density() const {
    ComplexMatrix r(8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) r(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
    return r;
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2);
    m(0, 1) = Complex(0.0, -1.0);
    m(1, 0) = Complex(0.0, 1.0);
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

ComplexMatrix op_on_qubit(int q, const ComplexMatrix& op) {
    if (q < 1 || q > 3) throw UnknownLabel("qubit index " + std::to_string(q));
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix& m1 = (q == 1) ? op : i2;
    const ComplexMatrix& m2 = (q == 2) ? op : i2;
    const ComplexMatrix& m3 = (q == 3) ? op : i2;
    return kron(kron(m1, m2), m3);
}

namespace {

// Occupation of dot i (1..6) in a 64-basis index, n1 = MSB.
inline int dot_occ(int idx, int i) { return (idx >> (6 - i)) & 1; }

// Coulomb pairs of Eq-style neighbour coupling, matching SixDotParams::coulomb.
constexpr int kCoulombPairs[8][2] = {{1, 3}, {1, 4}, {2, 3}, {2, 4},
                                     {3, 5}, {3, 6}, {4, 5}, {4, 6}};

}  // namespace

ComplexMatrix build_h6(const SixDotParams& p) {
    ComplexMatrix h(64);
    for (int idx = 0; idx < 64; ++idx) {
        double diag = 0.0;
        for (int i = 1; i <= 6; ++i) diag += p.site_energies[i - 1] * dot_occ(idx, i);
        for (int c = 0; c < 8; ++c)
            diag += p.coulomb[c] * dot_occ(idx, kCoulombPairs[c][0]) *
                    dot_occ(idx, kCoulombPairs[c][1]);
        h(idx, idx) = diag;
    }
    // Intra-molecule hopping d_i^dag d_j + h.c. for (i,j) = (1,2),(3,4),(5,6).
    // Adjacent orbitals in the 1..6 ordering carry no fermionic string, so
    // every matrix element is +V.
    for (int m = 0; m < 3; ++m) {
        const int i = 2 * m + 1;
        const int j = 2 * m + 2;
        const double v = p.tunnelings[m];
        if (v == 0.0) continue;
        for (int idx = 0; idx < 64; ++idx) {
            if (dot_occ(idx, j) == 1 && dot_occ(idx, i) == 0) {
                const int to = idx + (1 << (6 - i)) - (1 << (6 - j));
                h(to, idx) += v;
                h(idx, to) += v;
            }
        }
    }
    return h;
}

namespace {

// 64-basis index of the one-electron-per-molecule state for |q1 q2 q3>:
// qubit value 0 -> molecule in |10>, value 1 -> |01>.
int subspace_index(int q_index) {
    int idx = 0;
    for (int q = 1; q <= 3; ++q) {
        const int bit = (q_index >> (3 - q)) & 1;
        const int i = 2 * q - 1;
        if (bit == 0)
            idx |= 1 << (6 - i);
        else
            idx |= 1 << (6 - (i + 1));
    }
    return idx;
}

}  // namespace

ComplexMatrix project_to_qubit_subspace(const ComplexMatrix& h6) {
    if (h6.rows() != 64 || h6.cols() != 64)
        throw DimMismatch("project_to_qubit_subspace expects 64x64");
    ComplexMatrix h(8);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) h(a, b) = h6(subspace_index(a), subspace_index(b));
    return h;
}

std::pair<QubitParams, double> map_params(const SixDotParams& p) {
    QubitParams q;
    double offset = 0.0;
    for (int m = 0; m < 3; ++m) {
        const double e_upper = p.site_energies[2 * m];
        const double e_lower = p.site_energies[2 * m + 1];
        q.epsilon[m] = 0.5 * (e_upper - e_lower);
        offset += 0.5 * (e_upper + e_lower);
        q.delta[m] = p.tunnelings[m];
    }
    // Coulomb quarter-sums: U_ab over molecules (1,2) then (2,3). The
    // symmetric part is an identity shift, the single-index asymmetries are
    // sigma_z terms folded into epsilon, the double difference is J.
    const auto& u = p.coulomb;
    q.j12 = 0.25 * (u[0] - u[1] - u[2] + u[3]);
    q.epsilon[0] += 0.25 * (u[0] + u[1] - u[2] - u[3]);
    q.epsilon[1] += 0.25 * (u[0] - u[1] + u[2] - u[3]);
    offset += 0.25 * (u[0] + u[1] + u[2] + u[3]);

    q.j23 = 0.25 * (u[4] - u[5] - u[6] + u[7]);
    q.epsilon[1] += 0.25 * (u[4] + u[5] - u[6] - u[7]);
    q.epsilon[2] += 0.25 * (u[4] - u[5] + u[6] - u[7]);
    offset += 0.25 * (u[4] + u[5] + u[6] + u[7]);
    return {q, offset};
}

ComplexMatrix build_h3(const QubitParams& p) {
    ComplexMatrix h(8);
    const ComplexMatrix sx = pauli_x();
    const ComplexMatrix sz = pauli_z();
    for (int q = 1; q <= 3; ++q) {
        if (p.epsilon[q - 1] != 0.0) h += p.epsilon[q - 1] * op_on_qubit(q, sz);
        if (p.delta[q - 1] != 0.0) h += p.delta[q - 1] * op_on_qubit(q, sx);
    }
    if (p.j12 != 0.0) h += p.j12 * (op_on_qubit(1, sz) * op_on_qubit(2, sz));
    if (p.j23 != 0.0) h += p.j23 * (op_on_qubit(2, sz) * op_on_qubit(3, sz));
    return h;
}

std::pair<ComplexMatrix, ComplexMatrix> h0_and_v_split(const QubitParams& p) {
    QubitParams diag = p;
    diag.delta = {0.0, 0.0, 0.0};
    QubitParams offd;
    offd.delta = p.delta;
    return {build_h3(diag), build_h3(offd)};
}

PureState ghz_state(double phi) {
    PureState s;
    const double inv = 1.0 / std::sqrt(2.0);
    s.amplitudes[0] = inv;
    s.amplitudes[7] = std::polar(inv, phi);
    return s;
}

PureState flip_state(double phi) {
    PureState s;
    const double inv = 1.0 / std::sqrt(2.0);
    s.amplitudes[2] = inv;
    s.amplitudes[5] = std::polar(inv, phi);
    return s;
}

int basis_index(std::string_view label) {
    if (label.size() != 3) throw UnknownLabel("'" + std::string(label) + "'");
    int idx = 0;
    for (char c : label) {
        if (c != '0' && c != '1') throw UnknownLabel("'" + std::string(label) + "'");
        idx = (idx << 1) | (c - '0');
    }
    return idx;
}

std::string basis_label(int index) {
    if (index < 0 || index > 7) throw UnknownLabel("index " + std::to_string(index));
    std::string s(3, '0');
    for (int b = 0; b < 3; ++b)
        if (index & (1 << (2 - b))) s[b] = '1';
    return s;
}

PureState basis_state(std::string_view label) {
    PureState s;
    s.amplitudes[basis_index(label)] = 1.0;
    return s;
}

}  // namespace ghzsim
