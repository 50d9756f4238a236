import pytest
from pytest_cases import case, fixture, parametrize_with_cases

from twofold.kind import BaseKind, get_kind


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--oracle-cases",
        type=int,
        default=1_000_000,
        help="random pairs per width in the error-free transformation sweep",
    )


@pytest.fixture(scope="session")
def oracle_cases(request: pytest.FixtureRequest) -> int:
    return request.config.getoption("--oracle-cases")


class WidthCases:
    @case(tags=["binary32"])
    def case_binary32(self) -> int:
        return 32

    @case(tags=["binary64"])
    def case_binary64(self) -> int:
        return 64


@fixture(scope="session")
@parametrize_with_cases("width", cases=WidthCases)
def width(width: int) -> int:
    return width


class KindCases:
    @case(tags=["dotted"])
    def case_dotted32(self) -> str:
        return "dotted32"

    @case(tags=["dotted"])
    def case_dotted64(self) -> str:
        return "dotted64"

    @case(tags=["twofold"])
    def case_twofold32(self) -> str:
        return "twofold32"

    @case(tags=["twofold"])
    def case_twofold64(self) -> str:
        return "twofold64"

    @case(tags=["coupled"])
    def case_coupled32(self) -> str:
        return "coupled32"

    @case(tags=["coupled"])
    def case_coupled64(self) -> str:
        return "coupled64"


@fixture(scope="function")
@parametrize_with_cases("name", cases=KindCases)
def kind(name: str) -> BaseKind:
    return get_kind(name)


@fixture(scope="function")
@parametrize_with_cases("name", cases=KindCases, has_tag="twofold")
def twofold_kind(name: str) -> BaseKind:
    return get_kind(name)
