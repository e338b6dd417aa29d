#pragma once

#include "rational.hpp"
#include "laurent.hpp"
#include "commutative.hpp"
#include "qtorus.hpp"
#include "matrix.hpp"
#include "linalg.hpp"
#include "triangle_quiver.hpp"
#include "ncmatrix.hpp"
#include "slnq.hpp"
#include "flags.hpp"
#include "snakes_classical.hpp"
#include "snake_quantum.hpp"
#include "io.hpp"
