"""Exact and numerical checks for Chern-class identities of Azumaya modules.

Submodules: ``hermitian`` (metrics on duals, tensors and Hom spaces),
``chow`` (truncated graded ring with a formal pushforward), ``chern``
(characteristic classes and the A-Deligne pairing), ``script``/``runner``
(the ``.akv`` check language) and ``cli``.
"""
