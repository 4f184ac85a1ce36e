import pytest

from bimeasure.field import Field

Q = Field.rationals()
F2, F3, F5, F7 = (Field.prime(p) for p in (2, 3, 5, 7))


@pytest.fixture(params=[Q, F5, F7], ids=["Q", "F5", "F7"])
def field(request):
    return request.param
