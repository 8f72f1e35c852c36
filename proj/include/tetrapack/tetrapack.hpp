#ifndef TETRAPACK_TETRAPACK_HPP_
#define TETRAPACK_TETRAPACK_HPP_

#include "error.hpp"
#include "exact.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "separation.hpp"
#include "verify.hpp"
#include "json_io.hpp"
#include "mesh_export.hpp"

#endif // TETRAPACK_TETRAPACK_HPP_
