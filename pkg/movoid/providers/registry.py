from typing import Dict, Type

from movoid.core.exceptions import FormNotFoundError
from movoid.geometry.gf import Field
from movoid.models.enums import SpaceKind
from movoid.providers.base import PolarForm
from movoid.providers.elliptic import EllipticForm
from movoid.providers.hermitian import HermitianForm
from movoid.providers.symplectic import SymplecticForm


class FormRegistry:
    """
    Registry for polar form providers.
    """
    _forms: Dict[SpaceKind, Type[PolarForm]] = {}

    @classmethod
    def register(cls, kind: SpaceKind, form_class: Type[PolarForm]) -> None:
        """
        Register a form provider for a space kind.

        Args:
            kind: The space kind
            form_class: The form class
        """
        cls._forms[kind] = form_class

    @classmethod
    def get_form(cls, kind: SpaceKind, field: Field, r: int) -> PolarForm:
        """
        Get a form instance for a space kind.

        Args:
            kind: The space kind
            field: The field GF(q)
            r: Rank of the polar space

        Returns:
            PolarForm: An instance of the form

        Raises:
            FormNotFoundError: If no form is registered for the kind
        """
        if kind not in cls._forms:
            raise FormNotFoundError(str(kind.value if isinstance(kind, SpaceKind) else kind))
        return cls._forms[kind](field, r)

    @classmethod
    def list_forms(cls) -> Dict[SpaceKind, Type[PolarForm]]:
        """
        List all registered forms.

        Returns:
            Dict[SpaceKind, Type[PolarForm]]: Dictionary of kind to form class
        """
        return cls._forms.copy()


FormRegistry.register(SpaceKind.ELLIPTIC, EllipticForm)
FormRegistry.register(SpaceKind.SYMPLECTIC, SymplecticForm)
FormRegistry.register(SpaceKind.HERMITIAN, HermitianForm)
