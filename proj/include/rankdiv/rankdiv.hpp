#pragma once

#include "error.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "upoly.hpp"
#include "tower.hpp"
#include "linpoly.hpp"
#include "codes.hpp"
#include "analysis.hpp"
#include "qsystem.hpp"
#include "recognize.hpp"
#include "constructions.hpp"
#include "random.hpp"
#include "textio.hpp"
#include "json_io.hpp"
#include "verify.hpp"
