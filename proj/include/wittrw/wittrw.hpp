#pragma once

#include "wittrw/bigint.hpp"
#include "wittrw/truncation_set.hpp"
#include "wittrw/int_poly.hpp"
#include "wittrw/forms.hpp"
#include "wittrw/witt.hpp"
#include "wittrw/witt_blowup.hpp"
#include "wittrw/linalg_modpk.hpp"
#include "wittrw/drw.hpp"
#include "wittrw/gen_expr.hpp"
#include "wittrw/sampling.hpp"
#include "wittrw/io.hpp"
