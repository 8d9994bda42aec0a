#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfmat/matroid.hpp"
#include "pfmat/pfield.hpp"

namespace pfm {

enum class Verified { unchecked, p_matrix, not_p_matrix };

// A row/column-labeled matrix over a partial field. Entries are units or
// zero by construction; what can still go wrong is a subdeterminant whose
// cofactor sum leaves the group, and verify() hunts for exactly that.
class PMatrix {
  public:
    PMatrix(const PartialField& P, std::vector<std::string> row_labels,
            std::vector<std::string> col_labels);

    const PartialField& field() const { return *pf_; }
    int nrows() const { return int(rows_.size()); }
    int ncols() const { return int(cols_.size()); }
    const std::vector<std::string>& row_labels() const { return rows_; }
    const std::vector<std::string>& col_labels() const { return cols_; }
    int row_index(const std::string& l) const;  // -1 when absent
    int col_index(const std::string& l) const;

    const PfElement& at(int r, int c) const { return a_[r][c]; }
    void set(int r, int c, PfElement v);
    void set(const std::string& row, const std::string& col, const std::string& expr);

    // determinant of the submatrix on index sets R, C; nullopt when a cofactor
    // sum leaves the partial field
    std::optional<PfElement> det(u32 row_mask, u32 col_mask) const;
    // Z is a set of labels meeting both sides equally; throws when not square
    std::optional<PfElement> subdet(const std::vector<std::string>& Z) const;

    struct VerifyResult {
        bool ok = false;
        std::vector<std::string> witness;  // labels of the incriminating Z, empty when ok
    };
    const VerifyResult& verify() const;
    Verified verified() const { return verified_; }

    // The matroid on row labels + column labels whose bases are the X △ Z
    // with Z inducing a nonzero subdeterminant; the rows form a basis.
    // Requires a prior successful verify(); zero tests run over the finite
    // image with the given index (every image must give the same family).
    Matroid matroid_of(int image = 0) const;

    PMatrix pivot(const std::string& x, const std::string& y) const;
    bool scaling_equivalent(const PMatrix& B) const;
    PMatrix transpose_dual() const;  // rows/cols swapped (represents the dual)

    std::string str() const;

  private:
    const PartialField* pf_;
    std::vector<std::string> rows_, cols_;
    std::vector<std::vector<PfElement>> a_;
    mutable Verified verified_ = Verified::unchecked;
    mutable std::optional<VerifyResult> vres_;
};

struct IncriminationResult {
    enum class Verdict { det_outside_p, det_zero_but_basis, det_nonzero_but_dependent, consistent };
    Verdict verdict = Verdict::consistent;
    std::vector<std::string> Z;
};

// the three clauses of the incrimination definition, with X = rows of A as
// the reference basis of M
IncriminationResult incriminates(const Matroid& M, const PMatrix& A,
                                 const std::vector<std::string>& Z);

}  // namespace pfm
