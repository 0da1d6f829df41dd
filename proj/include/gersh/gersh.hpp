#pragma once

#include "gersh/complex_matrix.hpp"
#include "gersh/core_model.hpp"
#include "gersh/counting.hpp"
#include "gersh/dense_eigen.hpp"
#include "gersh/eig_oracle.hpp"
#include "gersh/error.hpp"
#include "gersh/fixtures.hpp"
#include "gersh/forward_error.hpp"
#include "gersh/matrix_market.hpp"
#include "gersh/reference_sets.hpp"
#include "gersh/region_json.hpp"
#include "gersh/regions.hpp"
#include "gersh/svg.hpp"
