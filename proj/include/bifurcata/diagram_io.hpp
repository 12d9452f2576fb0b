#pragma once

#include <string>
#include <vector>

#include "bifurcata/branches.hpp"
#include "bifurcata/spectrum.hpp"

namespace bifurcata {

// File emitters.  All numeric fields are serialized with 17 significant
// digits ("%.17g", C locale, '\n' line ends), so identical data produces
// byte-identical files.  Column orders are fixed:
//
//   diagram.csv / branch.csv:
//     branch_id,k,kind,sign,lambda,beta1,beta2,u1,D,morse
//     (morse empty when not computed)
//   bifpoints.csv:
//     type,k,sign,lambda,beta,phi,u1
//     (primary rows: type=primary, sign=0, beta=0, phi empty, u1=0)
//   profile.csv:
//     x,u,ux
//   morse.csv:
//     lambda,beta1,beta2,morse,degenerate,zero_tolerance,mu0,...,mu7
//     (eigenvalue cells beyond those computed stay empty)

void write_diagram_csv(const Diagram& dg, const std::string& path);
void write_branch_csv(const DiagramBranch& br, const std::string& path);
void write_bifpoints_csv(const Diagram& dg, const std::string& path);
void write_profile_csv(const SolutionProfile& p, const std::string& path);

struct SpectrumRow {
  double lambda = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  SpectrumResult spec;
};
void write_morse_csv(const std::vector<SpectrumRow>& rows,
                     const std::string& path);

// JSON twins of the CSV payloads (hand-rolled, fixed key order, same number
// formatting, no external dependencies).
void write_diagram_json(const Diagram& dg, const std::string& path);
void write_branch_json(const DiagramBranch& br, const std::string& path);
void write_bifpoints_json(const Diagram& dg, const std::string& path);
void write_profile_json(const SolutionProfile& p, const std::string& path);
void write_morse_json(const std::vector<SpectrumRow>& rows,
                      const std::string& path);

// Renders the bifurcation diagram (lambda on the abscissa, u(1) on the
// ordinate) by reading the two CSV files back; nothing is recomputed, so the
// plot cannot diverge from the data.  Branch coloring follows the kind
// column, bifurcation points become markers, and runs of equal morse values
// are labeled when the column is filled.
void write_diagram_svg(const std::string& diagram_csv,
                       const std::string& bifpoints_csv,
                       const std::string& svg_path, int width = 900,
                       int height = 600);

}  // namespace bifurcata
