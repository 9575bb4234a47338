#pragma once

// Reference values computed offline with mpmath (see generate_oracles.py).

namespace fracproc::oracle {

struct OraclePoint {
  double x;
  double value;
};

struct OracleTriple {
  double nu;
  double x;
  double value;
};

struct EtasLambdaPoint {
  double k;
  double theta;
  double lambda;
};

#include "oracle_values.inc"

}  // namespace fracproc::oracle
