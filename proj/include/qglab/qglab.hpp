#pragma once

#include "qglab/diagnostics.hpp"
#include "qglab/errors.hpp"
#include "qglab/experiments.hpp"
#include "qglab/fields.hpp"
#include "qglab/io.hpp"
#include "qglab/models.hpp"
#include "qglab/snapshot.hpp"
#include "qglab/spectral.hpp"
#include "qglab/timestepper.hpp"
