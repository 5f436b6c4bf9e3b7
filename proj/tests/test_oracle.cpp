// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
