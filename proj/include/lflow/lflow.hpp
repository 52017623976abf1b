#ifndef LFLOW_LFLOW_HPP
#define LFLOW_LFLOW_HPP

#include "lflow/errors.hpp"
#include "lflow/factors.hpp"
#include "lflow/gamma_flow.hpp"
#include "lflow/generators.hpp"
#include "lflow/graph.hpp"
#include "lflow/interval_flow.hpp"
#include "lflow/io.hpp"
#include "lflow/labels.hpp"
#include "lflow/linalg.hpp"
#include "lflow/matching.hpp"
#include "lflow/oracle.hpp"
#include "lflow/rational.hpp"
#include "lflow/simplex.hpp"
#include "lflow/special_flows.hpp"
#include "lflow/tree_flow.hpp"
#include "lflow/unicyclic.hpp"

#endif  // LFLOW_LFLOW_HPP
