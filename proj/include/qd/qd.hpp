#pragma once

#include "qd/certify.hpp"
#include "qd/error.hpp"
#include "qd/fanpall.hpp"
#include "qd/frame.hpp"
#include "qd/linalg.hpp"
#include "qd/quasidual.hpp"
#include "qd/spectral.hpp"
#include "qd/tolerances.hpp"
#include "qd/uin.hpp"
